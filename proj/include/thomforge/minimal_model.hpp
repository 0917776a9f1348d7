#pragma once

// Bigraded Sullivan minimal models, built degree by degree from the mapping
// cone C(f) of the current approximation f: M → A. Each class of H^k(C(f))_p
// becomes a generator v of degree k and weight p, with (dv, f(v)) read off a
// chosen cocycle of the cone. Degree k is repeated until H^k(C(f)) = 0.

#include <map>
#include <string>
#include <vector>

#include "thomforge/weight.hpp"

namespace thomforge {

struct MinimalModel {
  CdgaPresentation model;
  CdgaMorphism map;  // M → A
  int up_to = 0;
  bool converged = false;  // false when the iteration cap stopped a degree early
  int iterations = 0;
  QuasiIsoReport report;          // H^k(f) through degree up_to
  bool injective_next = false;    // H^{up_to+1}(f) is a monomorphism
  bool positive = false;

  /// No generator has a linear (or constant) term in its differential.
  bool decomposable() const {
    for (std::size_t g = 0; g < model.size(); ++g) {
      const Element dg = model.differential_of(g);
      for (const auto& [m, c] : dg.terms()) {
        int total = 0;
        for (int e : m.exponents()) total += e;
        if (total <= 1) return false;
      }
    }
    return true;
  }
};

namespace detail {

struct ModelDraft {
  std::vector<Generator> gens;
  std::vector<TermMap> differential;  // over the generator order of `gens`
  std::vector<Element> images;        // in the target
};

inline CdgaPresentation draft_presentation(const ModelDraft& draft, int truncation) {
  auto M = CdgaPresentation::make(draft.gens, truncation);
  std::map<std::string, Element> d;
  for (std::size_t g = 0; g < draft.gens.size(); ++g) {
    d.emplace(draft.gens[g].name, Element(M.data(), draft.differential[g]));
  }
  return M.with_differentials(d);
}

inline CdgaMorphism draft_morphism(const CdgaPresentation& M, const CdgaPresentation& A, const ModelDraft& draft) {
  std::map<std::string, Element> images;
  for (std::size_t g = 0; g < draft.gens.size(); ++g) images.emplace(draft.gens[g].name, draft.images[g]);
  return CdgaMorphism(M, A, images);
}

/// Re-expresses an element of an old stage in a stage with more generators
/// appended at the end of the same degree (monomial exponents extend by zero).
inline TermMap extend_terms(const TermMap& t, const std::vector<std::size_t>& position, std::size_t size) {
  TermMap out;
  for (const auto& [m, c] : t) {
    std::vector<int> e(size, 0);
    for (std::size_t g = 0; g < position.size(); ++g) e[position[g]] = m[g];
    out.emplace(Monomial(std::move(e)), c);
  }
  return out;
}

}  // namespace detail

/// Minimal model of A through degree up_to. A must be connected and simply
/// connected. Unweighted inputs with zero differential get weight = degree.
inline MinimalModel minimal_model(const CdgaPresentation& input, int up_to, int iteration_cap = 32) {
  CdgaPresentation A = input;
  if (!A.weighted() && A.has_zero_differential() && A.size() > 0) {
    std::map<std::string, int> w;
    for (const auto& g : A.generators()) w.emplace(g.name, g.degree);
    A = attach_weights(A, w).presentation;
  }
  if (up_to + 1 > A.faithful_top()) {
    throw Error(ErrorKind::cutoff_exceeded, "minimal model through degree " + std::to_string(up_to) +
                                                " needs the input faithful through degree " + std::to_string(up_to + 1));
  }
  const PresentationModel target(A);
  const DgAlgebra& TA = target.algebra();
  {
    const Cohomology H(TA, std::min(1, TA.top()));
    if (H.dim(0) != 1 || H.dim(1) != 0) {
      throw Error(ErrorKind::not_simply_connected, "H^0 has dimension " + std::to_string(H.dim(0)) +
                                                       " and H^1 has dimension " + std::to_string(H.dim(1)));
    }
  }
  const bool weighted = A.weighted();
  const int truncation = up_to + 2;

  detail::ModelDraft draft;
  int iterations = 0;
  bool converged = true;
  std::map<int, int> count_by_degree;

  for (int k = 2; k <= up_to; ++k) {
    int rounds = 0;
    while (true) {
      const CdgaPresentation M = detail::draft_presentation(draft, truncation);
      const CdgaMorphism f = detail::draft_morphism(M, A, draft);
      const PresentationModel source(M);
      const DgAlgebra& SM = source.algebra();
      const ChainMap fm = f.chain_map(source, target, truncation);
      auto f_apply = [&](int deg, const SparseVector& v) {
        return deg < static_cast<int>(fm.matrices.size()) ? fm.matrices[deg].apply(v) : SparseVector{};
      };
      // cone C^j = M^{j+1} ⊕ A^j, D(m, a) = (-dm, f(m) + da); D(v, 0) = (m, a) once dv = -m
      auto cone_dim_m = [&](int j) { return SM.dim(j + 1); };
      auto cone_d = [&](int j, const SparseVector& m, const SparseVector& a) {
        SparseVector out = -SM.d(j + 1, m);
        SparseVector lower = f_apply(j + 1, m) + TA.d(j, a);
        const Index shift = cone_dim_m(j + 1);
        for (const auto& [i, c] : lower) out.push_back(shift + i, c);
        return out;
      };
      auto cone_weight = [&](int j, Index i) {
        if (!weighted) return 0;
        return i < cone_dim_m(j) ? SM.weight(j + 1, i) : TA.weight(j, i - cone_dim_m(j));
      };
      const Index mk = cone_dim_m(k);
      const Index ck = mk + TA.dim(k);
      QuotientBasis classes;
      for (Index i = 0; i < cone_dim_m(k - 1); ++i) classes.add_base(cone_d(k - 1, SparseVector::unit(i), {}));
      for (Index i = 0; i < TA.dim(k - 1); ++i) classes.add_base(cone_d(k - 1, {}, SparseVector::unit(i)));
      std::map<int, std::vector<Index>> by_weight;
      for (Index i = 0; i < ck; ++i) by_weight[cone_weight(k, i)].push_back(i);
      struct NewGenerator {
        SparseVector m, a;
        int weight;
      };
      std::vector<NewGenerator> fresh;
      for (const auto& [w, idx] : by_weight) {
        std::vector<SparseVector> cols;
        for (Index i : idx) {
          cols.push_back(i < mk ? cone_d(k, SparseVector::unit(i), {}) : cone_d(k, {}, SparseVector::unit(i - mk)));
        }
        for (const auto& kv : kernel_basis(cols)) {
          SparseVector z = kv.select([](Index) { return true; }, [&](Index t) { return idx[t]; });
          if (!classes.add_candidate(z)) continue;
          NewGenerator g{{}, {}, w};
          for (const auto& [i, c] : z) {
            if (i < mk) g.m.push_back(i, c);
            else g.a.push_back(i - mk, c);
          }
          fresh.push_back(std::move(g));
        }
      }
      if (fresh.empty()) break;
      if (++rounds > iteration_cap) {
        converged = false;
        break;
      }
      ++iterations;
      // append generators of degree k; they sort after the existing degree-k ones
      std::vector<Generator> gens = draft.gens;
      std::vector<std::size_t> position;
      std::size_t insert_at = 0;
      while (insert_at < gens.size() && gens[insert_at].degree <= k) ++insert_at;
      for (std::size_t g = 0; g < gens.size(); ++g) position.push_back(g < insert_at ? g : g + fresh.size());
      const std::size_t size = gens.size() + fresh.size();
      detail::ModelDraft next;
      for (std::size_t g = 0; g < size; ++g) {
        next.gens.emplace_back();
        next.differential.emplace_back();
        next.images.push_back(A.zero());
      }
      for (std::size_t g = 0; g < draft.gens.size(); ++g) {
        next.gens[position[g]] = draft.gens[g];
        next.differential[position[g]] = detail::extend_terms(draft.differential[g], position, size);
        next.images[position[g]] = draft.images[g];
      }
      for (std::size_t i = 0; i < fresh.size(); ++i) {
        const std::size_t slot = insert_at + i;
        Generator g;
        g.degree = k;
        g.name = "v" + std::to_string(k) + "_" + std::to_string(++count_by_degree[k]);
        if (weighted) g.weight = fresh[i].weight;
        next.gens[slot] = g;
        next.differential[slot] = detail::extend_terms((-source.element({k + 1, fresh[i].m})).terms(), position, size);
        next.images[slot] = target.element({k, fresh[i].a});
      }
      draft = std::move(next);
    }
  }

  // a single generator in a degree is called v<degree>
  for (auto& g : draft.gens) {
    if (count_by_degree[g.degree] == 1) g.name = "v" + std::to_string(g.degree);
  }
  const CdgaPresentation M = detail::draft_presentation(draft, truncation);
  CdgaMorphism f = detail::draft_morphism(M, A, draft);
  MinimalModel out{M, f, up_to, converged, iterations, {}, false, false};
  const PresentationModel source(M);
  const ChainMap fm = f.chain_map(source, target, truncation);
  const Cohomology HM(source.algebra(), up_to + 1), HA(TA, up_to + 1);
  out.report = quasi_iso_report(fm, HM, HA, up_to);
  out.injective_next = rank_of(induced_map(fm, HM, HA, up_to + 1).columns) == HM.dim(up_to + 1);
  out.positive = weighted && is_positive(M);
  return out;
}

}  // namespace thomforge
