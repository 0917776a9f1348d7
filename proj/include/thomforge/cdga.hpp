#pragma once

// Free graded-commutative algebras Λ(V) over Q on finitely many generators, with
// a differential given on generators and a mandatory truncation degree N.
//
// A presentation with truncation N denotes the finite cdga Λ(V)/Λ^{>N}: products
// landing above N vanish. In the default mode it stands for Λ(V) itself, so
// cohomology is trusted only through degree N-1. In quotient mode the
// truncated algebra is the intended object and every degree is meaningful.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "thomforge/error.hpp"
#include "thomforge/rational.hpp"

namespace thomforge {

struct HodgeType {
  int p = 0;
  int q = 0;
  friend bool operator==(const HodgeType&, const HodgeType&) = default;
};

struct Generator {
  std::string name;
  int degree = 0;
  std::optional<int> weight;
  std::optional<HodgeType> hodge;
};

/// Exponent vector over the canonical generator order of one presentation.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<int> exponents) : exps_(std::move(exponents)) {}

  const std::vector<int>& exponents() const { return exps_; }
  int operator[](std::size_t g) const { return exps_[g]; }
  bool is_unit() const {
    return std::all_of(exps_.begin(), exps_.end(), [](int e) { return e == 0; });
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<int> exps_;
};

/// Descending lexicographic order on exponents: x^3 before x^2*y before y^3.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const { return a.exponents() > b.exponents(); }
};

using TermMap = std::map<Monomial, Rational, MonomialOrder>;

inline bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

namespace detail {

struct PresentationData {
  std::vector<Generator> generators;  // sorted by (degree, declaration index)
  std::map<std::string, std::size_t> index;
  std::vector<TermMap> differential;  // per generator
  int truncation = 0;
  bool quotient = false;
  bool weighted = false;
  bool typed = false;

  int degree(const Monomial& m) const {
    int d = 0;
    for (std::size_t g = 0; g < generators.size(); ++g) d += m[g] * generators[g].degree;
    return d;
  }
  int weight(const Monomial& m) const {
    int w = 0;
    for (std::size_t g = 0; g < generators.size(); ++g) w += m[g] * generators[g].weight.value_or(0);
    return w;
  }
  HodgeType hodge(const Monomial& m) const {
    HodgeType t;
    for (std::size_t g = 0; g < generators.size(); ++g) {
      const HodgeType h = generators[g].hodge.value_or(HodgeType{});
      t.p += m[g] * h.p;
      t.q += m[g] * h.q;
    }
    return t;
  }
  bool odd(std::size_t g) const { return generators[g].degree % 2 != 0; }
  Monomial unit() const { return Monomial(std::vector<int>(generators.size(), 0)); }

  /// Product of canonical monomials; nullopt when zero (odd square or above N).
  std::optional<std::pair<Monomial, int>> multiply(const Monomial& a, const Monomial& b) const {
    const std::size_t n = generators.size();
    std::vector<int> e(n);
    int swaps = 0;
    int odd_in_a_after = 0;  // odd factors of `a` with index > g, scanning g downwards
    for (std::size_t k = n; k-- > 0;) {
      if (odd(k) && b[k] > 0) {
        if (a[k] > 0) return std::nullopt;
        swaps += odd_in_a_after;
      }
      if (odd(k) && a[k] > 0) ++odd_in_a_after;
      e[k] = a[k] + b[k];
    }
    Monomial m(std::move(e));
    if (degree(m) > truncation) return std::nullopt;
    return std::make_pair(std::move(m), swaps % 2 == 0 ? 1 : -1);
  }

  void multiply_into(TermMap& out, const TermMap& a, const TermMap& b, const Rational& scale = 1) const {
    for (const auto& [ma, ca] : a) {
      for (const auto& [mb, cb] : b) {
        auto prod = multiply(ma, mb);
        if (!prod) continue;
        Rational c = ca * cb * scale;
        if (prod->second < 0) c = -c;
        auto [it, inserted] = out.try_emplace(prod->first, c);
        if (!inserted) {
          it->second += c;
          if (it->second == 0) out.erase(it);
        }
      }
    }
  }

  /// Leibniz expansion of d on one monomial, inside Λ(V)/Λ^{>N}.
  TermMap differential_of(const Monomial& m) const {
    TermMap out;
    const std::size_t n = generators.size();
    int prefix_degree = 0;
    for (std::size_t g = 0; g < n; ++g) {
      const int e = m[g];
      if (e == 0) continue;
      std::vector<int> left(n, 0), mid(n, 0), right(n, 0);
      for (std::size_t h = 0; h < g; ++h) left[h] = m[h];
      for (std::size_t h = g + 1; h < n; ++h) right[h] = m[h];
      mid[g] = e - 1;  // odd generators have e == 1
      TermMap lhs{{Monomial(std::move(left)), Rational(parity_sign(prefix_degree) * e)}};
      TermMap mids{{Monomial(std::move(mid)), Rational(1)}};
      TermMap step1, step2, step3;
      multiply_into(step1, lhs, mids);
      multiply_into(step2, step1, differential[g]);
      multiply_into(step3, step2, TermMap{{Monomial(std::move(right)), Rational(1)}});
      for (auto& [mono, c] : step3) {
        auto [it, inserted] = out.try_emplace(mono, c);
        if (!inserted) {
          it->second += c;
          if (it->second == 0) out.erase(it);
        }
      }
      prefix_degree += e * generators[g].degree;
    }
    return out;
  }

  TermMap differential_of(const TermMap& terms) const {
    TermMap out;
    for (const auto& [m, c] : terms) {
      for (const auto& [dm, dc] : differential_of(m)) {
        auto [it, inserted] = out.try_emplace(dm, c * dc);
        if (!inserted) {
          it->second += c * dc;
          if (it->second == 0) out.erase(it);
        }
      }
    }
    return out;
  }

  std::string format(const Monomial& m) const {
    if (m.is_unit()) return "1";
    std::string s;
    for (std::size_t g = 0; g < generators.size(); ++g) {
      if (m[g] == 0) continue;
      if (!s.empty()) s += "*";
      s += generators[g].name;
      if (m[g] > 1) s += "^" + std::to_string(m[g]);
    }
    return s;
  }
};

inline std::string format_terms(const PresentationData& data, const TermMap& terms) {
  if (terms.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : terms) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    first = false;
    if (m.is_unit()) {
      s += to_string(mag);
    } else {
      if (mag != 1) s += to_string(mag) + "*";
      s += data.format(m);
    }
  }
  return s;
}

}  // namespace detail

class CdgaPresentation;

/// Exact linear combination of canonical monomials of one presentation.
class Element {
 public:
  explicit Element(std::shared_ptr<const detail::PresentationData> data, TermMap terms = {})
      : data_(std::move(data)), terms_(std::move(terms)) {}

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Degree when homogeneous and nonzero.
  std::optional<int> degree() const {
    std::optional<int> d;
    for (const auto& [m, c] : terms_) {
      const int k = data_->degree(m);
      if (d && *d != k) return std::nullopt;
      d = k;
    }
    return d;
  }
  bool is_homogeneous() const { return is_zero() || degree().has_value(); }

  /// Weight when weight-homogeneous and nonzero (weighted presentations only).
  std::optional<int> weight() const {
    if (!data_->weighted) return std::nullopt;
    std::optional<int> w;
    for (const auto& [m, c] : terms_) {
      const int k = data_->weight(m);
      if (w && *w != k) return std::nullopt;
      w = k;
    }
    return w;
  }

  std::string to_string() const { return detail::format_terms(*data_, terms_); }

  const std::shared_ptr<const detail::PresentationData>& data() const { return data_; }

  Element& operator+=(const Element& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) accumulate(m, c);
    return *this;
  }
  Element& operator-=(const Element& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) accumulate(m, -c);
    return *this;
  }
  Element& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
    } else {
      for (auto& [m, v] : terms_) v *= c;
    }
    return *this;
  }

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator-(Element a) { return a *= Rational(-1); }
  friend Element operator*(Element a, const Rational& c) { return a *= c; }
  friend Element operator*(const Rational& c, Element a) { return a *= c; }
  friend Element operator*(const Element& a, const Element& b) {
    a.check_same(b);
    TermMap out;
    a.data_->multiply_into(out, a.terms_, b.terms_);
    return Element(a.data_, std::move(out));
  }
  friend bool operator==(const Element& a, const Element& b) {
    return a.data_ == b.data_ && a.terms_ == b.terms_;
  }

  void check_same(const Element& o) const {
    if (data_ != o.data_) throw Error(ErrorKind::mixed_presentations, "elements belong to different presentations");
  }

 private:
  void accumulate(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::shared_ptr<const detail::PresentationData> data_;
  TermMap terms_;
};

/// Immutable value handle on a validated presentation.
class CdgaPresentation {
 public:
  /// Presentation with zero differential. Generators are reordered by (degree, declaration).
  static CdgaPresentation make(std::vector<Generator> generators, int truncation, bool quotient = false) {
    if (truncation < 1) throw Error(ErrorKind::invalid_argument, "truncation degree must be positive");
    auto data = std::make_shared<detail::PresentationData>();
    std::stable_sort(generators.begin(), generators.end(),
                     [](const Generator& a, const Generator& b) { return a.degree < b.degree; });
    std::size_t weighted = 0, typed = 0;
    for (std::size_t i = 0; i < generators.size(); ++i) {
      const auto& g = generators[i];
      if (!is_identifier(g.name)) throw Error(ErrorKind::invalid_generator, "bad generator name '" + g.name + "'");
      if (g.degree < 1) {
        throw Error(ErrorKind::invalid_generator,
                    "generator '" + g.name + "' has degree " + std::to_string(g.degree) +
                        "; only positive degrees are allowed (connected algebras)");
      }
      if (!data->index.emplace(g.name, i).second) {
        throw Error(ErrorKind::invalid_generator, "duplicate generator '" + g.name + "'");
      }
      weighted += g.weight.has_value();
      typed += g.hodge.has_value();
    }
    if (weighted != 0 && weighted != generators.size()) {
      throw Error(ErrorKind::weight_violation, "either every generator carries a weight or none does");
    }
    if (typed != 0 && typed != generators.size()) {
      throw Error(ErrorKind::bigrading_violation, "either every generator carries a Hodge type or none does");
    }
    data->weighted = weighted == generators.size();
    data->typed = !generators.empty() && typed == generators.size();
    data->truncation = truncation;
    data->quotient = quotient;
    data->differential.assign(generators.size(), TermMap{});
    data->generators = std::move(generators);
    return CdgaPresentation(std::move(data));
  }

  /// Returns a copy carrying the given differential, validated for degree,
  /// weight compatibility and d∘d = 0 on generators.
  CdgaPresentation with_differentials(const std::map<std::string, Element>& images) const {
    auto data = std::make_shared<detail::PresentationData>(*data_);
    for (const auto& [name, image] : images) {
      const std::size_t g = index_of(name);
      const Element local = rehome(image);
      const int want = data->generators[g].degree + 1;
      if (auto deg = local.degree(); deg && *deg != want) {
        throw Error(ErrorKind::degree_mismatch, "d(" + name + ") has degree " + std::to_string(*deg) +
                                                    ", expected " + std::to_string(want));
      }
      if (!local.is_homogeneous()) {
        throw Error(ErrorKind::degree_mismatch, "d(" + name + ") is not homogeneous");
      }
      if (data->weighted) {
        const int w = *data->generators[g].weight;
        for (const auto& [m, c] : local.terms()) {
          if (data->weight(m) != w) {
            throw Error(ErrorKind::weight_violation,
                        "d(" + name + ") contains " + data->format(m) + " of weight " +
                            std::to_string(data->weight(m)) + " but ||" + name + "|| = " + std::to_string(w));
          }
        }
      }
      data->differential[g] = local.terms();
    }
    for (std::size_t g = 0; g < data->generators.size(); ++g) {
      TermMap dd = data->differential_of(data->differential[g]);
      if (!dd.empty()) {
        throw Error(ErrorKind::d2_nonzero, "d(d(" + data->generators[g].name + ")) = " +
                                               detail::format_terms(*data, dd) + " is nonzero");
      }
    }
    return CdgaPresentation(std::move(data));
  }

  const std::vector<Generator>& generators() const { return data_->generators; }
  std::size_t size() const { return data_->generators.size(); }
  int truncation() const { return data_->truncation; }
  bool quotient() const { return data_->quotient; }
  bool weighted() const { return data_->weighted; }
  bool typed() const { return data_->typed; }

  /// Highest degree whose cohomology is that of the intended algebra.
  int faithful_top() const { return data_->quotient ? kUnbounded : data_->truncation - 1; }
  static constexpr int kUnbounded = 1 << 20;

  std::size_t index_of(const std::string& name) const {
    auto it = data_->index.find(name);
    if (it == data_->index.end()) throw Error(ErrorKind::unknown_generator, "unknown generator '" + name + "'");
    return it->second;
  }
  bool has_generator(const std::string& name) const { return data_->index.count(name) != 0; }

  Element zero() const { return Element(data_); }
  Element constant(const Rational& c) const {
    TermMap t;
    if (c != 0) t.emplace(data_->unit(), c);
    return Element(data_, std::move(t));
  }
  Element one() const { return constant(1); }
  Element monomial(const Monomial& m, const Rational& c = 1) const {
    TermMap t;
    if (c != 0 && data_->degree(m) <= data_->truncation) t.emplace(m, c);
    return Element(data_, std::move(t));
  }
  Element generator(const std::string& name) const { return generator(index_of(name)); }
  Element generator(std::size_t g) const {
    std::vector<int> e(size(), 0);
    e[g] = 1;
    return monomial(Monomial(std::move(e)));
  }
  Element differential_of(std::size_t g) const { return Element(data_, data_->differential[g]); }
  Element differential_of(const std::string& name) const { return differential_of(index_of(name)); }

  int degree(const Monomial& m) const { return data_->degree(m); }
  int weight(const Monomial& m) const { return data_->weight(m); }
  HodgeType hodge(const Monomial& m) const { return data_->hodge(m); }
  std::string format(const Monomial& m) const { return data_->format(m); }

  bool has_zero_differential() const {
    return std::all_of(data_->differential.begin(), data_->differential.end(),
                       [](const TermMap& t) { return t.empty(); });
  }

  /// Same generator list (names, degrees, order) so elements can be moved across.
  bool compatible(const CdgaPresentation& other) const {
    const auto& a = generators();
    const auto& b = other.generators();
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].name != b[i].name || a[i].degree != b[i].degree) return false;
    }
    return true;
  }

  /// Re-expresses an element of a compatible presentation in this one.
  Element rehome(const Element& e) const {
    if (e.data() == data_) return e;
    const auto& src = e.data()->generators;
    bool same = src.size() == size();
    for (std::size_t i = 0; same && i < src.size(); ++i) {
      same = src[i].name == generators()[i].name && src[i].degree == generators()[i].degree;
    }
    if (!same) throw Error(ErrorKind::mixed_presentations, "element belongs to an incompatible presentation");
    TermMap t;
    for (const auto& [m, c] : e.terms()) {
      if (data_->degree(m) <= data_->truncation) t.emplace(m, c);
    }
    return Element(data_, std::move(t));
  }

  bool same(const CdgaPresentation& o) const { return data_ == o.data_; }
  const std::shared_ptr<const detail::PresentationData>& data() const { return data_; }

 private:
  explicit CdgaPresentation(std::shared_ptr<const detail::PresentationData> d) : data_(std::move(d)) {}
  std::shared_ptr<const detail::PresentationData> data_;
};

inline Element multiply(const Element& a, const Element& b) { return a * b; }

/// d on an element of degree at most N-1 (beyond that the truncation hides the answer).
inline Element differentiate(const Element& a) {
  const auto& data = *a.data();
  for (const auto& [m, c] : a.terms()) {
    if (!data.quotient && data.degree(m) > data.truncation - 1) {
      throw Error(ErrorKind::cutoff_exceeded, "cannot differentiate " + data.format(m) + " of degree " +
                                                  std::to_string(data.degree(m)) + " with truncation " +
                                                  std::to_string(data.truncation));
    }
  }
  return Element(a.data(), data.differential_of(a.terms()));
}

/// d inside the truncated quotient algebra; never throws.
inline Element differentiate_truncated(const Element& a) {
  return Element(a.data(), a.data()->differential_of(a.terms()));
}

/// Sign-normalized canonical form; applying it twice changes nothing.
inline Element normalize(const Element& a) {
  Element out(a.data());
  for (const auto& [m, c] : a.terms()) {
    TermMap t{{m, c}};
    TermMap unit{{a.data()->unit(), Rational(1)}};
    TermMap r;
    a.data()->multiply_into(r, unit, t);
    out += Element(a.data(), std::move(r));
  }
  return out;
}

/// All canonical monomials of total degree n (odd exponents at most 1), in
/// MonomialOrder. Empty above the truncation.
inline std::vector<Monomial> basis(const CdgaPresentation& A, int n) {
  std::vector<Monomial> out;
  if (n < 0 || n > A.truncation()) return out;
  const auto& gens = A.generators();
  std::vector<int> exps(gens.size(), 0);
  auto rec = [&](auto&& self, std::size_t g, int remaining) -> void {
    if (g == gens.size()) {
      if (remaining == 0) out.emplace_back(exps);
      return;
    }
    const int deg = gens[g].degree;
    int max_e = remaining / deg;
    if (deg % 2 != 0) max_e = std::min(max_e, 1);
    for (int e = max_e; e >= 0; --e) {
      exps[g] = e;
      self(self, g + 1, remaining - e * deg);
    }
    exps[g] = 0;
  };
  rec(rec, 0, n);
  return out;
}

}  // namespace thomforge
