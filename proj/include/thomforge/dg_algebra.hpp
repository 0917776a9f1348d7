#pragma once

// Finite-dimensional differential graded algebras given by explicit per-degree
// bases. Presentations, Thom models, cohomology algebras and weight truncations
// all become one of these, so cohomology and quasi-isomorphism checks are
// written once.

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "thomforge/cdga.hpp"
#include "thomforge/linalg.hpp"

namespace thomforge {

struct Cochain {
  int degree = 0;
  SparseVector vector;

  bool is_zero() const { return vector.empty(); }
  friend bool operator==(const Cochain& a, const Cochain& b) {
    return (a.is_zero() && b.is_zero()) || (a.degree == b.degree && a.vector == b.vector);
  }
};

inline std::string format_vector(const std::vector<std::string>& labels, const SparseVector& v) {
  if (v.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [i, c] : v) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    first = false;
    if (labels[i] == "1") {
      s += to_string(mag);
    } else {
      if (mag != 1) s += to_string(mag) + "*";
      s += labels[i];
    }
  }
  return s;
}

class DgAlgebra {
 public:
  struct Block {
    std::vector<std::string> labels;
    std::vector<int> weights;                // one per basis vector when weighted
    std::vector<SparseVector> differential;  // column i = d(basis i) in the next degree
    std::size_t size() const { return labels.size(); }
  };
  using ProductFn = std::function<SparseVector(int, Index, int, Index)>;

  struct Spec {
    std::string name;
    std::vector<Block> blocks;  // degrees 0..top
    ProductFn product;
    bool has_unit = false;  // basis vector 0 of degree 0
    bool weighted = false;
    int faithful_top = 0;
  };

  explicit DgAlgebra(Spec spec) : impl_(std::make_shared<const Spec>(std::move(spec))) {}

  const std::string& name() const { return impl_->name; }
  int top() const { return static_cast<int>(impl_->blocks.size()) - 1; }
  int faithful_top() const { return impl_->faithful_top; }
  bool weighted() const { return impl_->weighted; }
  bool has_unit() const { return impl_->has_unit; }

  const Block& block(int k) const {
    static const Block empty;
    if (k < 0 || k > top()) return empty;
    return impl_->blocks[static_cast<std::size_t>(k)];
  }
  std::size_t dim(int k) const { return block(k).size(); }
  int weight(int k, Index i) const { return weighted() ? block(k).weights[i] : 0; }

  SparseVector d(int k, const SparseVector& v) const {
    SparseVector out;
    if (k < 0 || k >= top()) return out;
    const auto& cols = block(k).differential;
    for (const auto& [i, c] : v) out.add_scaled(cols[i], c);
    return out;
  }
  Cochain d(const Cochain& x) const { return {x.degree + 1, d(x.degree, x.vector)}; }

  SparseVector product(int k, Index i, int l, Index j) const {
    if (k + l > top()) return {};
    return impl_->product(k, i, l, j);
  }

  Cochain multiply(const Cochain& a, const Cochain& b) const {
    Cochain out{a.degree + b.degree, {}};
    if (out.degree > top()) return out;
    for (const auto& [i, ci] : a.vector) {
      for (const auto& [j, cj] : b.vector) out.vector.add_scaled(product(a.degree, i, b.degree, j), ci * cj);
    }
    return out;
  }

  Cochain basis_vector(int k, Index i) const { return {k, SparseVector::unit(i)}; }
  Cochain unit() const {
    if (!has_unit()) throw Error(ErrorKind::invalid_argument, name() + " has no unit");
    return basis_vector(0, 0);
  }

  std::string format(const Cochain& x) const { return format_vector(block(x.degree).labels, x.vector); }

 private:
  std::shared_ptr<const Spec> impl_;
};

/// Degreewise linear map between two DgAlgebras: matrices[k] maps degree k.
struct ChainMap {
  DgAlgebra source;
  DgAlgebra target;
  std::vector<SparseMatrix> matrices;

  Cochain apply(const Cochain& x) const {
    if (x.degree < 0 || x.degree >= static_cast<int>(matrices.size())) return {x.degree, {}};
    return {x.degree, matrices[static_cast<std::size_t>(x.degree)].apply(x.vector)};
  }

  /// First degree k < up_to where f∘d ≠ d∘f, or -1.
  int first_noncommuting_degree(int up_to) const {
    for (int k = 0; k < up_to && k + 1 < static_cast<int>(matrices.size()); ++k) {
      for (Index i = 0; i < source.dim(k); ++i) {
        const Cochain x = source.basis_vector(k, i);
        if (!(apply(source.d(x)) == target.d(apply(x)))) return k;
      }
    }
    return -1;
  }
};

/// A presentation expanded into monomial bases, with conversions both ways.
class PresentationModel {
 public:
  explicit PresentationModel(CdgaPresentation A) : A_(std::move(A)), tables_(std::make_shared<Tables>()) {
    const int N = A_.truncation();
    tables_->bases.resize(static_cast<std::size_t>(N) + 1);
    tables_->index.resize(static_cast<std::size_t>(N) + 1);
    for (int k = 0; k <= N; ++k) {
      tables_->bases[k] = thomforge::basis(A_, k);
      for (Index i = 0; i < tables_->bases[k].size(); ++i) tables_->index[k].emplace(tables_->bases[k][i], i);
    }
    DgAlgebra::Spec spec;
    spec.name = "presentation";
    spec.has_unit = true;
    spec.weighted = A_.weighted();
    spec.faithful_top = A_.faithful_top();
    const auto& data = *A_.data();
    for (int k = 0; k <= N; ++k) {
      DgAlgebra::Block b;
      for (const auto& m : tables_->bases[k]) {
        b.labels.push_back(data.format(m));
        if (spec.weighted) b.weights.push_back(data.weight(m));
        SparseVector col;
        if (k < N) col = to_vector(Element(A_.data(), data.differential_of(m)), k + 1);
        b.differential.push_back(std::move(col));
      }
      spec.blocks.push_back(std::move(b));
    }
    auto tables = tables_;
    auto dataptr = A_.data();
    spec.product = [tables, dataptr](int k, Index i, int l, Index j) {
      SparseVector out;
      auto prod = dataptr->multiply(tables->bases[k][i], tables->bases[l][j]);
      if (!prod) return out;
      const int kl = k + l;
      out.push_back(tables->index[kl].at(prod->first), Rational(prod->second));
      return out;
    };
    algebra_.emplace(std::move(spec));
  }

  const CdgaPresentation& presentation() const { return A_; }
  const DgAlgebra& algebra() const { return *algebra_; }
  const std::vector<Monomial>& basis(int k) const { return tables_->bases.at(static_cast<std::size_t>(k)); }

  /// Degree-k component of x in the monomial basis.
  SparseVector to_vector(const Element& x, int k) const {
    std::vector<std::pair<Index, Rational>> entries;
    if (k < 0 || k > A_.truncation()) return {};
    const auto& idx = tables_->index[static_cast<std::size_t>(k)];
    for (const auto& [m, c] : x.terms()) {
      if (A_.degree(m) != k) continue;
      entries.emplace_back(idx.at(m), c);
    }
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVector v;
    for (auto& [i, c] : entries) v.push_back(i, std::move(c));
    return v;
  }

  /// x must be homogeneous; the zero element needs an explicit degree.
  Cochain cochain(const Element& x, std::optional<int> degree = std::nullopt) const {
    const Element local = A_.rehome(x);
    if (!local.is_homogeneous()) throw Error(ErrorKind::degree_mismatch, "element " + x.to_string() + " is not homogeneous");
    const int k = local.degree().value_or(degree.value_or(0));
    if (degree && local.degree() && *degree != k) {
      throw Error(ErrorKind::degree_mismatch, "element " + x.to_string() + " does not have degree " + std::to_string(*degree));
    }
    return {k, to_vector(local, k)};
  }

  Element element(const Cochain& c) const {
    TermMap t;
    if (c.degree < 0 || c.degree > A_.truncation()) return A_.zero();
    for (const auto& [i, v] : c.vector) t.emplace(basis(c.degree)[i], v);
    return Element(A_.data(), std::move(t));
  }

 private:
  struct Tables {
    std::vector<std::vector<Monomial>> bases;
    std::vector<std::map<Monomial, Index, MonomialOrder>> index;
  };
  CdgaPresentation A_;
  std::shared_ptr<Tables> tables_;
  std::optional<DgAlgebra> algebra_;
};

}  // namespace thomforge
