#pragma once

// Weight decompositions: A^n = ⊕_p A^n_p with d and products respecting p.
// Purity of cohomology (H^n_p = 0 for p ≠ n) is turned into an explicit
// formality zig-zag A ⟵ τA ⟶ H(A) through the truncation at weight n.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thomforge/thom.hpp"

namespace thomforge {

/// A^0 = A^0_0 and every basis element of positive degree has positive weight.
inline bool is_positive(const DgAlgebra& A) {
  if (!A.weighted()) return false;
  for (int k = 0; k <= A.top(); ++k) {
    for (Index i = 0; i < A.dim(k); ++i) {
      const int w = A.weight(k, i);
      if (k == 0 ? w != 0 : w <= 0) return false;
    }
  }
  return true;
}

inline bool is_positive(const CdgaPresentation& A) {
  if (!A.weighted()) return false;
  for (const auto& g : A.generators()) {
    if (*g.weight <= 0) return false;
  }
  return true;
}

/// Checks d(A_p) ⊂ A_p and A_p · A_q ⊂ A_{p+q} on basis elements through degree `top`.
inline std::optional<std::string> weight_defect(const DgAlgebra& A, int top) {
  if (!A.weighted()) return std::string("algebra carries no weights");
  for (int k = 0; k <= std::min(top, A.top()); ++k) {
    for (Index i = 0; i < A.dim(k); ++i) {
      for (const auto& [j, c] : A.block(k).differential[i]) {
        if (A.weight(k + 1, j) != A.weight(k, i)) return "d(" + A.block(k).labels[i] + ") changes weight";
      }
      for (int l = k; k + l <= std::min(top, A.top()); ++l) {
        for (Index j = 0; j < A.dim(l); ++j) {
          for (const auto& [t, c] : A.product(k, i, l, j)) {
            if (A.weight(k + l, t) != A.weight(k, i) + A.weight(l, j)) {
              return A.block(k).labels[i] + " * " + A.block(l).labels[j] + " is not weight-additive";
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

struct WeightedCdga {
  CdgaPresentation presentation;
  bool positive = false;
};

/// Re-presents A with the given generator weights. Fails with weight_violation
/// naming the first generator whose differential is not of its weight.
inline WeightedCdga attach_weights(const CdgaPresentation& A, const std::map<std::string, int>& weights) {
  std::vector<Generator> gens = A.generators();
  for (auto& g : gens) {
    auto it = weights.find(g.name);
    if (it == weights.end()) throw Error(ErrorKind::weight_violation, "no weight given for generator '" + g.name + "'");
    g.weight = it->second;
  }
  for (const auto& [name, w] : weights) {
    if (!A.has_generator(name)) throw Error(ErrorKind::unknown_generator, "weight for unknown generator '" + name + "'");
  }
  auto W = CdgaPresentation::make(std::move(gens), A.truncation(), A.quotient());
  std::map<std::string, Element> d;
  for (std::size_t g = 0; g < A.size(); ++g) d.emplace(A.generators()[g].name, A.differential_of(g));
  W = W.with_differentials(d);
  return {W, is_positive(W)};
}

/// Bigraded cohomology H^n(A)_p.
inline GradedVectorSpaceReport weighted_cohomology(const CdgaPresentation& W, int up_to) {
  if (!W.weighted()) throw Error(ErrorKind::weight_violation, "presentation carries no weights");
  return cohomology(W, up_to);
}

/// τA: zero in weights p < n, the cocycles in weight p = n, everything for p > n.
inline SubAlgebra pure_truncation(const DgAlgebra& A) {
  if (!A.weighted()) throw Error(ErrorKind::weight_violation, "truncation needs a weighted algebra");
  std::vector<std::vector<SparseVector>> spanning;
  for (int n = 0; n <= A.top(); ++n) {
    std::vector<SparseVector> span;
    std::vector<Index> pure;
    for (Index i = 0; i < A.dim(n); ++i) {
      const int p = A.weight(n, i);
      if (p > n) span.push_back(SparseVector::unit(i));
      if (p == n) pure.push_back(i);
    }
    std::vector<SparseVector> cols;
    for (Index i : pure) cols.push_back(A.block(n).differential[i]);
    for (const auto& k : kernel_basis(cols)) span.push_back(k.select([](Index) { return true; }, [&](Index t) { return pure[t]; }));
    spanning.push_back(std::move(span));
  }
  return make_subalgebra(A, spanning, "tau", A.faithful_top());
}

struct Obstruction {
  int degree = 0;
  int weight = 0;
  std::size_t dimension = 0;
  friend bool operator==(const Obstruction&, const Obstruction&) = default;
};

struct FormalityCertificate {
  SubAlgebra tau;
  DgAlgebra cohomology;
  ChainMap projection;  // τA → H(A)
  QuasiIsoReport inclusion_report;
  QuasiIsoReport projection_report;
  bool projection_multiplicative = false;

  bool verified() const {
    return inclusion_report.quasi_iso() && projection_report.quasi_iso() && projection_multiplicative;
  }
};

struct FormalityResult {
  std::vector<Obstruction> obstructions;  // blocks H^n_p ≠ 0 with p ≠ n
  std::optional<FormalityCertificate> certificate;
  bool formal() const { return obstructions.empty() && certificate && certificate->verified(); }
};

inline FormalityResult formality_certificate(const DgAlgebra& A, int up_to) {
  if (!A.weighted()) throw Error(ErrorKind::weight_violation, "formality certificate needs a weighted algebra");
  const Cohomology H(A, up_to);
  up_to = H.up_to();
  FormalityResult r;
  for (int n = 0; n <= up_to; ++n) {
    for (const auto& [p, dim] : H.weight_dims(n)) {
      if (p != n && dim > 0) r.obstructions.push_back({n, p, dim});
    }
  }
  if (!r.obstructions.empty()) return r;

  SubAlgebra tau = pure_truncation(A);
  DgAlgebra HA = cohomology_algebra(H);
  ChainMap proj{tau.algebra, HA, {}};
  for (int n = 0; n <= up_to + 1; ++n) {
    SparseMatrix m;
    m.rows = HA.dim(n);
    for (Index i = 0; i < tau.algebra.dim(n); ++i) {
      if (n <= up_to && tau.algebra.weight(n, i) == n) {
        m.columns.push_back(H.coordinates({n, tau.inclusion.matrices[n].columns[i]}));
      } else {
        m.columns.emplace_back();
      }
    }
    proj.matrices.push_back(std::move(m));
  }
  const Cohomology Htau(tau.algebra, up_to);
  const Cohomology HH(HA, up_to);
  QuasiIsoReport inc = quasi_iso_report(tau.inclusion, Htau, H, up_to);
  QuasiIsoReport pr = quasi_iso_report(proj, Htau, HH, up_to);
  bool mult = true;
  for (int k = 0; k <= up_to; ++k) {
    for (int l = k; k + l <= up_to; ++l) {
      for (Index i = 0; i < tau.algebra.dim(k); ++i) {
        for (Index j = 0; j < tau.algebra.dim(l); ++j) {
          const Cochain a = tau.algebra.basis_vector(k, i), b = tau.algebra.basis_vector(l, j);
          if (!(proj.apply(tau.algebra.multiply(a, b)) == HA.multiply(proj.apply(a), proj.apply(b)))) mult = false;
        }
      }
    }
  }
  r.certificate = FormalityCertificate{std::move(tau), HA, std::move(proj), std::move(inc), std::move(pr), mult};
  return r;
}

inline FormalityResult formality_certificate(const CdgaPresentation& W, int up_to) {
  if (!W.weighted()) throw Error(ErrorKind::weight_violation, "presentation carries no weights");
  return formality_certificate(PresentationModel(W).algebra(), up_to);
}

struct WeightedThom {
  ThomModel model;
  bool positive = false;
};

/// A[e] with ||w_x|| = ||x|| + ||e||. For e = 0 the Euler weight defaults to n.
inline WeightedThom thom_weights(const CdgaPresentation& W, const Element& e, int n,
                                 std::optional<int> euler_weight = std::nullopt) {
  if (!W.weighted()) throw Error(ErrorKind::weight_violation, "base carries no weights");
  ThomModel T(W, e, n, euler_weight);
  if (auto defect = weight_defect(T.algebra(), T.algebra().top())) {
    throw Error(ErrorKind::weight_violation, "Thom model: " + *defect);
  }
  // the Thom model has no degree-0 part once n > 0, so positivity reduces to positive weights
  bool positive = true;
  for (int k = 0; k <= T.algebra().top(); ++k) {
    for (Index i = 0; i < T.algebra().dim(k); ++i) {
      if (T.algebra().weight(k, i) <= 0) positive = false;
    }
  }
  return {std::move(T), positive};
}

/// The endomorphism multiplying weight-p elements by λ^p.
inline CdgaMorphism weight_scaling(const CdgaPresentation& W, const Rational& lambda) {
  if (lambda == 0) throw Error(ErrorKind::invalid_argument, "scaling factor must be nonzero");
  if (!W.weighted()) throw Error(ErrorKind::weight_violation, "presentation carries no weights");
  std::map<std::string, Element> images;
  for (std::size_t g = 0; g < W.size(); ++g) {
    const int p = *W.generators()[g].weight;
    Rational c = 1;
    for (int k = 0; k < std::abs(p); ++k) c *= lambda;
    if (p < 0) c = 1 / c;
    images.emplace(W.generators()[g].name, c * W.generator(g));
  }
  return CdgaMorphism(W, W, images);
}

}  // namespace thomforge
