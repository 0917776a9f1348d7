#pragma once

// Free graded Lie algebras over Q. Elements live in the tensor algebra T(V) with
// [a,b] = ab - (-1)^{|a||b|} ba, which makes the expanded form canonical. The
// basis in each degree is the standard bracketing of Lyndon words together with
// the squares [u,u] of odd Lyndon brackets.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "thomforge/error.hpp"
#include "thomforge/linalg.hpp"
#include "thomforge/rational.hpp"

namespace thomforge {

struct LieGenerator {
  std::string name;
  int degree = 1;  // homological
};

using Word = std::vector<int>;
using TensorPoly = std::map<Word, Rational>;

namespace detail {

struct LieData {
  std::vector<LieGenerator> gens;
  int truncation = 0;

  int degree(const Word& w) const {
    int s = 0;
    for (int g : w) s += gens[static_cast<std::size_t>(g)].degree;
    return s;
  }
};

inline void add_term(TensorPoly& p, const Word& w, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = p.emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

}  // namespace detail

class LieElement {
 public:
  LieElement(std::shared_ptr<const detail::LieData> data, TensorPoly terms)
      : data_(std::move(data)), terms_(std::move(terms)) {}

  const TensorPoly& terms() const { return terms_; }
  const std::shared_ptr<const detail::LieData>& data() const { return data_; }
  bool is_zero() const { return terms_.empty(); }

  std::optional<int> degree() const {
    std::optional<int> d;
    for (const auto& [w, c] : terms_) {
      const int k = data_->degree(w);
      if (d && *d != k) return std::nullopt;
      d = k;
    }
    return d;
  }

  LieElement& operator+=(const LieElement& o) {
    check(o);
    for (const auto& [w, c] : o.terms_) detail::add_term(terms_, w, c);
    return *this;
  }
  LieElement& operator-=(const LieElement& o) {
    check(o);
    for (const auto& [w, c] : o.terms_) detail::add_term(terms_, w, -c);
    return *this;
  }
  LieElement& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
    } else {
      for (auto& [w, v] : terms_) v *= c;
    }
    return *this;
  }
  friend LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
  friend LieElement operator-(LieElement a, const LieElement& b) { return a -= b; }
  friend LieElement operator-(LieElement a) { return a *= Rational(-1); }
  friend LieElement operator*(const Rational& c, LieElement a) { return a *= c; }
  friend bool operator==(const LieElement& a, const LieElement& b) { return a.terms_ == b.terms_; }

  void check(const LieElement& o) const {
    if (o.data_ != data_) throw Error(ErrorKind::mixed_presentations, "Lie elements from different free Lie algebras");
  }

 private:
  std::shared_ptr<const detail::LieData> data_;
  TensorPoly terms_;
};

inline LieElement bracket(const LieElement& a, const LieElement& b) {
  a.check(b);
  const auto& D = *a.data();
  TensorPoly out;
  for (const auto& [u, cu] : a.terms()) {
    const int du = D.degree(u);
    for (const auto& [v, cv] : b.terms()) {
      const int dv = D.degree(v);
      if (du + dv > D.truncation) continue;
      Word uv = u, vu = v;
      uv.insert(uv.end(), v.begin(), v.end());
      vu.insert(vu.end(), u.begin(), u.end());
      detail::add_term(out, uv, cu * cv);
      detail::add_term(out, vu, -Rational(parity_sign(du * dv)) * cu * cv);
    }
  }
  return LieElement(a.data(), std::move(out));
}

struct LieBasisElement {
  std::string label;
  Word word;  // Lyndon word, or uu for a square
  LieElement value;
};

class FreeLieAlgebra {
 public:
  FreeLieAlgebra(std::vector<LieGenerator> gens, int truncation) {
    auto data = std::make_shared<detail::LieData>();
    for (const auto& g : gens) {
      if (g.degree < 1) throw Error(ErrorKind::invalid_generator, "Lie generator '" + g.name + "' needs positive degree");
      for (const auto& h : data->gens) {
        if (h.name == g.name) throw Error(ErrorKind::invalid_generator, "duplicate Lie generator '" + g.name + "'");
      }
      data->gens.push_back(g);
    }
    data->truncation = truncation;
    data_ = std::move(data);
  }

  const std::vector<LieGenerator>& generators() const { return data_->gens; }
  std::size_t size() const { return data_->gens.size(); }
  int truncation() const { return data_->truncation; }
  const std::shared_ptr<const detail::LieData>& data() const { return data_; }

  std::size_t index_of(const std::string& name) const {
    for (std::size_t i = 0; i < size(); ++i) {
      if (data_->gens[i].name == name) return i;
    }
    throw Error(ErrorKind::unknown_generator, "unknown Lie generator '" + name + "'");
  }

  LieElement zero() const { return LieElement(data_, {}); }
  LieElement generator(std::size_t i) const {
    if (data_->gens[i].degree > truncation()) return zero();
    return LieElement(data_, {{Word{static_cast<int>(i)}, Rational(1)}});
  }
  LieElement generator(const std::string& name) const { return generator(index_of(name)); }

  /// Lyndon words of total degree n, in lexicographic order.
  std::vector<Word> lyndon_words(int n) const {
    std::vector<Word> out;
    Word cur;
    auto rec = [&](auto&& self, int remaining) -> void {
      if (remaining == 0) {
        if (is_lyndon(cur)) out.push_back(cur);
        return;
      }
      for (std::size_t g = 0; g < size(); ++g) {
        const int d = data_->gens[g].degree;
        if (d > remaining) continue;
        if (!cur.empty() && static_cast<int>(g) < cur.front()) continue;  // a Lyndon word starts with its least letter
        cur.push_back(static_cast<int>(g));
        self(self, remaining - d);
        cur.pop_back();
      }
    };
    rec(rec, n);
    return out;
  }

  /// Basis of L(V)_n ordered by word length, then lexicographically.
  std::vector<LieBasisElement> basis(int n) const {
    std::vector<LieBasisElement> out;
    if (n < 1 || n > truncation()) return out;
    for (const auto& w : lyndon_words(n)) out.push_back(standard(w));
    if (n % 2 == 0) {
      for (const auto& w : lyndon_words(n / 2)) {
        if ((n / 2) % 2 == 0) continue;
        LieBasisElement u = standard(w);
        Word ww = w;
        ww.insert(ww.end(), w.begin(), w.end());
        out.push_back({"[" + u.label + "," + u.label + "]", ww, bracket(u.value, u.value)});
      }
    }
    std::stable_sort(out.begin(), out.end(), [](const LieBasisElement& a, const LieBasisElement& b) {
      return a.word.size() != b.word.size() ? a.word.size() < b.word.size() : a.word < b.word;
    });
    return out;
  }

  /// Coordinates of a homogeneous element of degree n in basis(n).
  SparseVector coordinates(const LieElement& x, int n) const {
    const auto B = basis(n);
    std::map<Word, Index> rows;
    auto row = [&](const Word& w) {
      auto it = rows.find(w);
      if (it == rows.end()) it = rows.emplace(w, rows.size()).first;
      return it->second;
    };
    auto vec = [&](const TensorPoly& p) {
      std::map<Index, Rational> m;
      for (const auto& [w, c] : p) m[row(w)] += c;
      SparseVector v;
      for (const auto& [i, c] : m) {
        if (c != 0) v.push_back(i, c);
      }
      return v;
    };
    std::vector<SparseVector> cols;
    for (const auto& b : B) cols.push_back(vec(b.value.terms()));
    auto s = solve(cols, vec(x.terms()));
    if (!s) throw Error(ErrorKind::invalid_argument, "element is not in the free Lie algebra");
    return *s;
  }

  /// Bracket notation in the basis, degree by degree.
  std::string format(const LieElement& x) const {
    std::map<int, TensorPoly> parts;
    for (const auto& [w, c] : x.terms()) parts[data_->degree(w)].emplace(w, c);
    std::string s;
    for (const auto& [n, p] : parts) {
      const auto B = basis(n);
      std::vector<std::string> labels;
      for (const auto& b : B) labels.push_back(b.label);
      std::string part = format_vector(labels, coordinates(LieElement(data_, p), n));
      if (!s.empty()) s += part.front() == '-' ? " - " + part.substr(1) : " + " + part;
      else s = part;
    }
    return s.empty() ? "0" : s;
  }

 private:
  static bool is_lyndon(const Word& w) {
    if (w.empty()) return false;
    for (std::size_t i = 1; i < w.size(); ++i) {
      if (!std::lexicographical_compare(w.begin(), w.end(), w.begin() + static_cast<long>(i), w.end())) return false;
    }
    return true;
  }

  LieBasisElement standard(const Word& w) const {
    if (w.size() == 1) return {data_->gens[static_cast<std::size_t>(w[0])].name, w, generator(static_cast<std::size_t>(w[0]))};
    // w = uv with v the longest proper Lyndon suffix
    for (std::size_t i = 1; i < w.size(); ++i) {
      Word v(w.begin() + static_cast<long>(i), w.end());
      if (is_lyndon(v)) {
        Word u(w.begin(), w.begin() + static_cast<long>(i));
        auto a = standard(u), b = standard(v);
        return {"[" + a.label + "," + b.label + "]", w, bracket(a.value, b.value)};
      }
    }
    throw Error(ErrorKind::invalid_argument, "word is not Lyndon");
  }

  static std::string format_vector(const std::vector<std::string>& labels, const SparseVector& v) {
    if (v.empty()) return "0";
    std::string s;
    for (const auto& [i, c] : v) {
      const Rational mag = c < 0 ? Rational(-c) : c;
      s += s.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
      if (mag != 1) s += to_string(mag) + "*";
      s += labels[i];
    }
    return s;
  }

  std::shared_ptr<const detail::LieData> data_;
};

/// Free dgl (L(V), d) with d of degree -1 given on generators.
class DglPresentation {
 public:
  DglPresentation(FreeLieAlgebra L, std::vector<LieElement> d) : L_(std::move(L)), d_(std::move(d)) {
    if (d_.size() != L_.size()) throw Error(ErrorKind::invalid_dgl, "one differential per generator is required");
    for (std::size_t g = 0; g < L_.size(); ++g) {
      d_[g].check(L_.zero());
      auto k = d_[g].degree();
      if (k && *k != L_.generators()[g].degree - 1) {
        throw Error(ErrorKind::degree_mismatch, "d(" + L_.generators()[g].name + ") has degree " + std::to_string(*k) +
                                                    ", expected " + std::to_string(L_.generators()[g].degree - 1));
      }
      if (!d_[g].is_zero() && !k) throw Error(ErrorKind::degree_mismatch, "d(" + L_.generators()[g].name + ") is inhomogeneous");
    }
  }

  static DglPresentation with_zero_differential(FreeLieAlgebra L) {
    std::vector<LieElement> d(L.size(), L.zero());
    return DglPresentation(std::move(L), std::move(d));
  }

  const FreeLieAlgebra& algebra() const { return L_; }
  const LieElement& differential_of(std::size_t g) const { return d_[g]; }

  /// d extended to T(V) as a derivation, which restricts to L(V).
  LieElement differentiate(const LieElement& x) const {
    x.check(L_.zero());
    const auto& D = *L_.data();
    TensorPoly out;
    for (const auto& [w, c] : x.terms()) {
      int before = 0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        const Rational sign(parity_sign(before));
        for (const auto& [dw, dc] : d_[static_cast<std::size_t>(w[i])].terms()) {
          Word t(w.begin(), w.begin() + static_cast<long>(i));
          t.insert(t.end(), dw.begin(), dw.end());
          t.insert(t.end(), w.begin() + static_cast<long>(i) + 1, w.end());
          detail::add_term(out, t, sign * c * dc);
        }
        before += D.gens[static_cast<std::size_t>(w[i])].degree;
      }
    }
    return LieElement(L_.data(), std::move(out));
  }

  /// Every d(v) is a combination of brackets of two generators.
  bool is_quadratic() const {
    for (const auto& dg : d_) {
      for (const auto& [w, c] : dg.terms()) {
        if (w.size() != 2) return false;
      }
    }
    return true;
  }

  /// d(v_k) involves only generators listed before v_k.
  bool is_order_preserving() const {
    for (std::size_t k = 0; k < d_.size(); ++k) {
      for (const auto& [w, c] : d_[k].terms()) {
        for (int g : w) {
          if (static_cast<std::size_t>(g) >= k) return false;
        }
      }
    }
    return true;
  }

  std::string to_text() const {
    std::string s;
    for (const auto& g : L_.generators()) s += "gen " + g.name + " : " + std::to_string(g.degree) + "\n";
    for (std::size_t g = 0; g < L_.size(); ++g) {
      if (!d_[g].is_zero()) s += "d " + L_.generators()[g].name + " = " + L_.format(d_[g]) + "\n";
    }
    return s;
  }

 private:
  FreeLieAlgebra L_;
  std::vector<LieElement> d_;
};

struct DglReport {
  bool valid = true;
  std::vector<std::string> failures;
  std::size_t brackets_checked = 0;
};

/// d² = 0 on generators and the graded Leibniz rule on random brackets of basis elements.
inline DglReport validate_dgl(const DglPresentation& D, int up_to, std::uint64_t seed = 0, int trials = 64) {
  DglReport r;
  const FreeLieAlgebra& L = D.algebra();
  for (std::size_t g = 0; g < L.size(); ++g) {
    if (L.generators()[g].degree > up_to) continue;
    const LieElement dd = D.differentiate(D.differential_of(g));
    if (!dd.is_zero()) {
      r.valid = false;
      r.failures.push_back("d(d(" + L.generators()[g].name + ")) = " + L.format(dd));
    }
  }
  std::vector<LieBasisElement> pool;
  for (int n = 1; n <= up_to; ++n) {
    for (auto& b : L.basis(n)) pool.push_back(std::move(b));
  }
  if (pool.empty()) return r;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int t = 0; t < trials; ++t) {
    const auto& a = pool[pick(rng)];
    const auto& b = pool[pick(rng)];
    const int da = *a.value.degree();
    if (da + *b.value.degree() > up_to) continue;
    ++r.brackets_checked;
    const LieElement lhs = D.differentiate(bracket(a.value, b.value));
    const LieElement rhs = bracket(D.differentiate(a.value), b.value) +
                           Rational(parity_sign(da)) * bracket(a.value, D.differentiate(b.value));
    if (!(lhs == rhs)) {
      r.valid = false;
      r.failures.push_back("Leibniz fails on [" + a.label + "," + b.label + "]");
    }
  }
  return r;
}

}  // namespace thomforge
