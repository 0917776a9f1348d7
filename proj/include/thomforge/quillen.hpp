#pragma once

// Quillen models of formal spaces and of their Thom spaces. For a cohomology
// algebra H with zero differential the model is L(s^{-1} H̃_*) with d dual to
// the cup product; generators carry homological degree |h| - 1.

#include <map>
#include <string>
#include <vector>

#include "thomforge/cohomology.hpp"
#include "thomforge/lie.hpp"

namespace thomforge {

struct FormalQuillenModel {
  DglPresentation dgl;
  std::vector<std::string> classes;  // dual cohomology basis element of each generator
  std::vector<int> cohomology_degree;
};

namespace detail {

inline std::string indexed_name(const std::string& stem, int degree, int index, int count) {
  return stem + std::to_string(degree) + (count > 1 ? "_" + std::to_string(index) : "");
}

/// The reduced monomial basis of a zero-differential presentation, by degree.
struct ReducedBasis {
  std::vector<Monomial> monomials;
  std::vector<int> degrees;
  std::map<Monomial, std::size_t, MonomialOrder> index;
};

inline ReducedBasis reduced_basis(const CdgaPresentation& H) {
  if (!H.has_zero_differential()) {
    throw Error(ErrorKind::invalid_argument, "the base must be given by its cohomology algebra (zero differential)");
  }
  ReducedBasis B;
  for (int k = 1; k <= H.truncation(); ++k) {
    const auto ms = basis(H, k);
    if (k == 1 && !ms.empty()) throw Error(ErrorKind::not_simply_connected, "H^1 is nonzero");
    for (const auto& m : ms) {
      B.index.emplace(m, B.monomials.size());
      B.monomials.push_back(m);
      B.degrees.push_back(k);
    }
  }
  return B;
}

}  // namespace detail

/// Quillen model of the formal space with cohomology H:
/// d v_k = ½ Σ_{a,b} (-1)^{|h_a|} m^k_{ab} [v_a, v_b], where h_a h_b = Σ_k m^k_{ab} h_k.
inline FormalQuillenModel quillen_model(const CdgaPresentation& H) {
  const auto B = detail::reduced_basis(H);
  std::vector<LieGenerator> gens;
  std::map<int, int> count, seen;
  for (int d : B.degrees) ++count[d];
  FormalQuillenModel out{DglPresentation::with_zero_differential(FreeLieAlgebra({}, 0)), {}, {}};
  for (std::size_t i = 0; i < B.monomials.size(); ++i) {
    const int k = B.degrees[i];
    gens.push_back({detail::indexed_name("v", k - 1, ++seen[k], count[k]), k - 1});
    out.classes.push_back(H.format(B.monomials[i]));
    out.cohomology_degree.push_back(k);
  }
  const int top = B.degrees.empty() ? 0 : B.degrees.back() - 1;
  FreeLieAlgebra L(gens, top);
  std::vector<LieElement> d(gens.size(), L.zero());
  for (std::size_t a = 0; a < B.monomials.size(); ++a) {
    for (std::size_t b = 0; b < B.monomials.size(); ++b) {
      const Element prod = H.monomial(B.monomials[a]) * H.monomial(B.monomials[b]);
      for (const auto& [m, c] : prod.terms()) {
        const std::size_t k = B.index.at(m);
        const Rational coeff = Rational(parity_sign(B.degrees[a])) * c / 2;
        d[k] += coeff * bracket(L.generator(a), L.generator(b));
      }
    }
  }
  out.dgl = DglPresentation(std::move(L), std::move(d));
  return out;
}

/// φ_e: V → V dual to multiplication by e on H̃; columns[b] = φ_e(v_b) in generator coordinates.
struct EulerDual {
  int n = 0;
  std::vector<SparseVector> columns;

  EulerDual then(const EulerDual& psi) const {  // ψ ∘ φ
    EulerDual out{n + psi.n, {}};
    for (const auto& col : columns) {
      SparseVector v;
      for (const auto& [i, c] : col) v.add_scaled(psi.columns[i], c);
      out.columns.push_back(std::move(v));
    }
    return out;
  }
};

inline EulerDual euler_dual_map(const CdgaPresentation& H, const Element& e) {
  const auto B = detail::reduced_basis(H);
  const Element el = H.rehome(e);
  if (!el.is_homogeneous()) throw Error(ErrorKind::euler_inhomogeneous, "Euler class " + el.to_string() + " is not homogeneous");
  EulerDual phi{el.degree().value_or(0), std::vector<SparseVector>(B.monomials.size())};
  // e·h_a = Σ_b E_{ba} h_b gives φ(v_b) = Σ_a E_{ba} v_a
  std::vector<std::map<Index, Rational>> cols(B.monomials.size());
  for (std::size_t a = 0; a < B.monomials.size(); ++a) {
    const Element prod = el * H.monomial(B.monomials[a]);
    for (const auto& [m, c] : prod.terms()) cols[B.index.at(m)][a] += c;
  }
  for (std::size_t b = 0; b < cols.size(); ++b) {
    for (const auto& [a, c] : cols[b]) {
      if (c != 0) phi.columns[b].push_back(a, c);
    }
  }
  return phi;
}

struct ThomQuillenModel {
  DglPresentation dgl;
  std::size_t thom_generator = 0;  // u0
};

/// (L(u0, s^n V), d̄) with d̄(u0) = 0 and
/// d̄(s^n v_k) = Σ λ_{ij} ([s^n φ(v_i), s^n v_j] + [s^n v_i, s^n φ(v_j)]).
inline ThomQuillenModel quillen_thom_model(const DglPresentation& D, const EulerDual& phi, int n) {
  const FreeLieAlgebra& L = D.algebra();
  if (!D.is_quadratic()) throw Error(ErrorKind::non_quadratic, "the base differential is not quadratic");
  if (phi.columns.size() != L.size()) throw Error(ErrorKind::invalid_argument, "φ_e does not match the generators");
  if (n < 2 || n % 2 != 0) throw Error(ErrorKind::odd_rank_unsupported, "rank must be even and at least 2");
  for (std::size_t b = 0; b < L.size(); ++b) {
    for (const auto& [a, c] : phi.columns[b]) {
      if (L.generators()[a].degree != L.generators()[b].degree - phi.n) {
        throw Error(ErrorKind::degree_mismatch, "φ_e does not lower degree by " + std::to_string(phi.n));
      }
    }
  }
  std::vector<LieGenerator> gens{{"u0", n - 1}};
  int top = n - 1;
  for (const auto& g : L.generators()) {
    gens.push_back({"s" + std::to_string(n) + g.name, g.degree + n});
    top = std::max(top, g.degree + n);
  }
  FreeLieAlgebra T(gens, std::max(top, L.truncation() + n));
  auto s = [&](std::size_t g) { return T.generator(g + 1); };
  auto s_phi = [&](std::size_t g) {
    LieElement x = T.zero();
    for (const auto& [a, c] : phi.columns[g]) x += c * s(a);
    return x;
  };
  std::vector<LieElement> d(gens.size(), T.zero());
  for (std::size_t k = 0; k < L.size(); ++k) {
    for (const auto& [w, c] : D.differential_of(k).terms()) {
      const auto i = static_cast<std::size_t>(w[0]), j = static_cast<std::size_t>(w[1]);
      if (i > j) continue;  // the partner term of [v_j, v_i]
      const Rational lambda = i == j ? c / 2 : c;
      d[k + 1] += lambda * (bracket(s_phi(i), s(j)) + bracket(s(i), s_phi(j)));
    }
  }
  return {DglPresentation(std::move(T), std::move(d)), 0};
}

}  // namespace thomforge
