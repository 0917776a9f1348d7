#pragma once

// The Thom cdga A[e]: the n-fold suspension of A with d(w_x) = w_{dx} and the
// product w_x · w_y = w_{exy}. It is a non-unital model of the Thom space of a
// rank n bundle whose Euler class is represented by e.

#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "thomforge/morphism.hpp"

namespace thomforge {

/// w_x: an element of A carried in degree |x| + n.
struct SuspendedElement {
  Element underlying;
  int shift = 0;

  bool is_zero() const { return underlying.is_zero(); }
  std::optional<int> degree() const {
    auto d = underlying.degree();
    return d ? std::optional<int>(*d + shift) : std::nullopt;
  }
  std::string to_string() const { return "w(" + underlying.to_string() + ")"; }
  friend bool operator==(const SuspendedElement& a, const SuspendedElement& b) {
    return a.shift == b.shift && a.underlying == b.underlying;
  }
};

class ThomModel {
 public:
  /// `euler_weight` is consulted only when e = 0 on a weighted base; it defaults to n.
  ThomModel(CdgaPresentation base, const Element& e, int n, std::optional<int> euler_weight = std::nullopt)
      : base_(std::move(base)), euler_(base_.zero()), n_(n) {
    euler_ = base_.rehome(e);
    if (n % 2 != 0) {
      throw Error(ErrorKind::odd_rank_unsupported,
                  "rank " + std::to_string(n) + " is odd; the Thom space of an odd-rank bundle over a formal base "
                  "is modelled by its cohomology with zero differential");
    }
    if (n < 0) throw Error(ErrorKind::invalid_argument, "rank must be non-negative");
    if (!euler_.is_homogeneous() || (euler_.degree() && *euler_.degree() != n)) {
      throw Error(ErrorKind::degree_mismatch, "Euler element " + euler_.to_string() + " is not of degree " +
                                                  std::to_string(n));
    }
    if (!differentiate_truncated(euler_).is_zero()) {
      throw Error(ErrorKind::euler_not_closed, "d(" + euler_.to_string() + ") = " +
                                                   differentiate_truncated(euler_).to_string());
    }
    if (base_.weighted()) {
      if (euler_.is_zero()) {
        euler_weight_ = euler_weight.value_or(n);
      } else if (auto w = euler_.weight()) {
        euler_weight_ = *w;
      } else {
        throw Error(ErrorKind::euler_inhomogeneous, "Euler element " + euler_.to_string() + " mixes weights");
      }
    }
    model_ = std::make_shared<PresentationModel>(base_);
    build_algebra();
  }

  const CdgaPresentation& base() const { return base_; }
  const Element& euler() const { return euler_; }
  int shift() const { return n_; }
  bool weighted() const { return euler_weight_.has_value(); }
  std::optional<int> euler_weight() const { return euler_weight_; }
  const PresentationModel& base_model() const { return *model_; }
  const DgAlgebra& algebra() const { return *algebra_; }

  SuspendedElement w(const Element& x) const { return {base_.rehome(x), n_}; }

  SuspendedElement multiply(const SuspendedElement& a, const SuspendedElement& b) const {
    check(a);
    check(b);
    return w(euler_ * a.underlying * b.underlying);
  }
  SuspendedElement differentiate(const SuspendedElement& a) const {
    check(a);
    return w(differentiate_truncated(a.underlying));
  }

  /// Weight of w_x is ||x|| + ||e||.
  std::optional<int> weight(const SuspendedElement& a) const {
    if (!euler_weight_) return std::nullopt;
    auto w = a.underlying.weight();
    return w ? std::optional<int>(*w + *euler_weight_) : std::nullopt;
  }

  Cochain cochain(const SuspendedElement& a, std::optional<int> degree = std::nullopt) const {
    check(a);
    std::optional<int> base_degree;
    if (degree) base_degree = *degree - n_;
    Cochain c = model_->cochain(a.underlying, base_degree);
    return {c.degree + n_, std::move(c.vector)};
  }
  SuspendedElement element(const Cochain& c) const { return w(model_->element({c.degree - n_, c.vector})); }

  void check(const SuspendedElement& a) const {
    if (a.shift != n_) throw Error(ErrorKind::mixed_presentations, "suspended element has the wrong shift");
    if (a.underlying.data() != base_.data()) {
      throw Error(ErrorKind::mixed_presentations, "suspended element belongs to another base");
    }
  }

 private:
  void build_algebra() {
    const DgAlgebra& A = model_->algebra();
    DgAlgebra::Spec spec;
    spec.name = "thom";
    spec.weighted = weighted();
    spec.has_unit = false;
    spec.faithful_top = A.faithful_top() >= CdgaPresentation::kUnbounded ? CdgaPresentation::kUnbounded
                                                                         : A.faithful_top() + n_;
    for (int k = 0; k <= A.top() + n_; ++k) {
      DgAlgebra::Block b;
      const auto& src = A.block(k - n_);
      for (Index i = 0; i < src.size(); ++i) {
        b.labels.push_back("w(" + src.labels[i] + ")");
        if (spec.weighted) b.weights.push_back(src.weights[i] + *euler_weight_);
        b.differential.push_back(src.differential[i]);
      }
      spec.blocks.push_back(std::move(b));
    }
    const Cochain e = model_->cochain(euler_, n_);
    const int n = n_;
    spec.product = [A, e, n](int k, Index i, int l, Index j) {
      const Cochain xy = A.multiply(A.basis_vector(k - n, i), A.basis_vector(l - n, j));
      return A.multiply(e, xy).vector;
    };
    algebra_.emplace(std::move(spec));
  }

  CdgaPresentation base_;
  Element euler_;
  int n_;
  std::optional<int> euler_weight_;
  std::shared_ptr<PresentationModel> model_;
  std::optional<DgAlgebra> algebra_;
};

inline ThomModel thom_model(const CdgaPresentation& A, const Element& e, int n) { return ThomModel(A, e, n); }

/// (x, w_y) ↦ w_{xy}: the model of the relative cup product.
inline SuspendedElement relative_cup(const ThomModel& T, const Element& x, const SuspendedElement& wy) {
  T.check(wy);
  return T.w(T.base().rehome(x) * wy.underlying);
}

struct EulerComparison {
  std::size_t pairs_checked = 0;
  bool homotopy_identity = true;
  std::string first_failure;
  std::vector<std::size_t> betti_e;
  std::vector<std::size_t> betti_e_prime;
  bool betti_equal = false;
  bool product_ranks_equal = false;  // rank of H^a ⊗ H^b → H^{a+b} for every a, b
};

namespace detail {

inline std::map<std::pair<int, int>, std::size_t> product_ranks(const Cohomology& H) {
  std::map<std::pair<int, int>, std::size_t> out;
  const DgAlgebra A = cohomology_algebra(H);
  for (int a = 0; a <= H.up_to(); ++a) {
    for (int b = a; a + b <= H.up_to(); ++b) {
      std::vector<SparseVector> images;
      for (Index i = 0; i < A.dim(a); ++i) {
        for (Index j = 0; j < A.dim(b); ++j) images.push_back(A.product(a, i, b, j));
      }
      out[{a, b}] = rank_of(images);
    }
  }
  return out;
}

}  // namespace detail

/// Checks that H(w_x ⊗ w_y) = w_{xyz} is a homotopy between the products of
/// A[e] and A[e′] on every pair of basis monomials, and compares cohomology.
inline EulerComparison compare_euler_reps(const CdgaPresentation& A, const Element& e, const Element& e_prime,
                                          const Element& z, int up_to) {
  const Element el = A.rehome(e), ep = A.rehome(e_prime), zl = A.rehome(z);
  const Element dz = differentiate_truncated(zl);
  if (!(dz == el - ep)) {
    throw Error(ErrorKind::not_cohomologous, "d(" + zl.to_string() + ") = " + dz.to_string() + " differs from " +
                                                 (el - ep).to_string());
  }
  const int n = el.degree().value_or(ep.degree().value_or(zl.degree().value_or(-1) + 1));
  const ThomModel T(A, el, n), Tp(A, ep, n);
  EulerComparison r;
  for (int p = 0; p + n <= A.truncation(); ++p) {
    for (int q = 0; p + q + n <= A.truncation(); ++q) {
      for (const auto& mx : basis(A, p)) {
        for (const auto& my : basis(A, q)) {
          const Element x = A.monomial(mx), y = A.monomial(my);
          const Element H = x * y * zl;
          const Element hd = differentiate_truncated(x) * y * zl + Rational(parity_sign(p)) * (x * differentiate_truncated(y) * zl);
          const Element lhs = differentiate_truncated(H) - hd;
          const SuspendedElement diff_products = T.w(T.multiply(T.w(x), T.w(y)).underlying -
                                                     Tp.multiply(Tp.w(x), Tp.w(y)).underlying);
          const Element rhs = Rational(parity_sign(p + q)) * diff_products.underlying;
          ++r.pairs_checked;
          if (!(lhs == rhs) && r.homotopy_identity) {
            r.homotopy_identity = false;
            r.first_failure = A.format(mx) + " ⊗ " + A.format(my);
          }
        }
      }
    }
  }
  const Cohomology H1(T.algebra(), up_to), H2(Tp.algebra(), up_to);
  r.betti_e = H1.report().betti();
  r.betti_e_prime = H2.report().betti();
  r.betti_equal = r.betti_e == r.betti_e_prime;
  r.product_ranks_equal = detail::product_ranks(H1) == detail::product_ranks(H2);
  return r;
}

struct ThomTransport {
  ChainMap map;  // w_x ↦ w_{f(x)} on the Thom models
  bool commutes_with_d = false;
  bool multiplicative = false;
  bool module_square_commutes = false;
  bool base_quasi_iso = false;
  QuasiIsoReport report;  // of the transported map
};

/// g(w_x) = w_{f(x)} from A[e] to A′[f(e)], with its checks.
inline ThomTransport transport_thom(const CdgaMorphism& f, const Element& e, int up_to, std::uint64_t seed = 0) {
  const Element el = f.source().rehome(e);
  const int n = el.degree().value_or(0);
  const ThomModel S(f.source(), el, n), T(f.target(), f.apply(el), n);
  const int top = std::min(f.source().truncation(), f.target().truncation());
  ChainMap base = f.chain_map(S.base_model(), T.base_model(), top);
  ChainMap g{S.algebra(), T.algebra(), {}};
  for (int k = 0; k <= top + n; ++k) {
    if (k < n) {
      g.matrices.push_back(SparseMatrix{T.algebra().dim(k), std::vector<SparseVector>(S.algebra().dim(k))});
    } else {
      g.matrices.push_back(base.matrices[static_cast<std::size_t>(k - n)]);
    }
  }
  ThomTransport r{g, false, true, true, false, {}};
  const int check_top = std::min(up_to, top + n - 1);
  r.commutes_with_d = g.first_noncommuting_degree(check_top + 1) < 0;
  // products and the module square on basis pairs
  const DgAlgebra& SA = S.algebra();
  for (int k = n; k <= top + n; ++k) {
    for (int l = n; k + l <= top + n; ++l) {
      for (Index i = 0; i < SA.dim(k); ++i) {
        for (Index j = 0; j < SA.dim(l); ++j) {
          const Cochain a = SA.basis_vector(k, i), b = SA.basis_vector(l, j);
          if (!(g.apply(SA.multiply(a, b)) == T.algebra().multiply(g.apply(a), g.apply(b)))) r.multiplicative = false;
        }
      }
    }
  }
  std::mt19937_64 rng(seed);
  for (int p = 0; p <= top; ++p) {
    for (int q = 0; p + q <= top; ++q) {
      for (int trial = 0; trial < 3; ++trial) {
        Element x = f.source().zero(), y = f.source().zero();
        std::uniform_int_distribution<int> coeff(-3, 3);
        for (const auto& m : basis(f.source(), p)) x += f.source().monomial(m, coeff(rng));
        for (const auto& m : basis(f.source(), q)) y += f.source().monomial(m, coeff(rng));
        const SuspendedElement lhs = T.w(f.apply(relative_cup(S, x, S.w(y)).underlying));
        const SuspendedElement rhs = relative_cup(T, f.apply(x), T.w(f.apply(y)));
        if (!(lhs == rhs)) r.module_square_commutes = false;
      }
    }
  }
  const int base_top = std::min(up_to - n, std::min(f.source().faithful_top(), f.target().faithful_top()));
  r.base_quasi_iso = base_top < 0 || is_quasi_iso(f, base_top).quasi_iso();
  r.report = quasi_iso_report(g, up_to);
  return r;
}

struct ThomCohomologyReport {
  GradedVectorSpaceReport groups;
  struct Product {
    std::string left, right, product;
  };
  std::vector<Product> products;  // reduced classes, left ≤ right, product degree ≤ up_to
};

inline ThomCohomologyReport thom_cohomology(const ThomModel& T, int up_to) {
  const Cohomology H(T.algebra(), up_to);
  ThomCohomologyReport r;
  r.groups = H.report();
  const DgAlgebra HA = cohomology_algebra(H);
  for (int a = 1; a <= H.up_to(); ++a) {
    for (int b = a; a + b <= H.up_to(); ++b) {
      for (Index i = 0; i < HA.dim(a); ++i) {
        for (Index j = (a == b ? i : 0); j < HA.dim(b); ++j) {
          const Cochain p = HA.multiply(HA.basis_vector(a, i), HA.basis_vector(b, j));
          r.products.push_back({HA.block(a).labels[i], HA.block(b).labels[j], HA.format(p)});
        }
      }
    }
  }
  return r;
}

}  // namespace thomforge
