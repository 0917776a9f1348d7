#pragma once

// Split mixed Hodge data: each generator carries a type (p,q) and the weight
// of I^{p,q} is p + q. The Thom model of a rank k complex bundle with Euler
// class of pure type (k,k) is the Tate twist M^n = A^{n-2k}(-k).

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "thomforge/weight.hpp"

namespace thomforge {

class SplitMixedHodgeCdga {
 public:
  /// Checks that every generator is typed and d preserves types.
  explicit SplitMixedHodgeCdga(CdgaPresentation A) : A_(std::move(A)) {
    if (!A_.typed() && A_.size() != 0) throw Error(ErrorKind::bigrading_violation, "generators carry no Hodge types");
    for (std::size_t g = 0; g < A_.size(); ++g) {
      const auto& gen = A_.generators()[g];
      const Element dg = A_.differential_of(g);
      for (const auto& [m, c] : dg.terms()) {
        const HodgeType t = A_.hodge(m);
        if (!(t == *gen.hodge)) {
          throw Error(ErrorKind::bigrading_violation,
                      "d(" + gen.name + ") contains " + A_.format(m) + " of type (" + std::to_string(t.p) + "," +
                          std::to_string(t.q) + ") but " + gen.name + " has type (" + std::to_string(gen.hodge->p) +
                          "," + std::to_string(gen.hodge->q) + ")");
        }
      }
    }
  }

  const CdgaPresentation& presentation() const { return A_; }
  HodgeType type(const Monomial& m) const { return A_.hodge(m); }

  /// p + q ≥ degree on every generator, the bound W_{n-1} A^n = 0 of smooth varieties.
  bool smooth_type() const {
    for (const auto& g : A_.generators()) {
      if (g.hodge->p + g.hodge->q < g.degree) return false;
    }
    return true;
  }

 private:
  CdgaPresentation A_;
};

inline WeightedCdga weights_from_splitting(const SplitMixedHodgeCdga& S) {
  std::map<std::string, int> weights;
  for (const auto& g : S.presentation().generators()) weights.emplace(g.name, g.hodge->p + g.hodge->q);
  WeightedCdga W = attach_weights(S.presentation(), weights);
  PresentationModel M(W.presentation);
  if (auto defect = weight_defect(M.algebra(), M.algebra().top())) {
    throw Error(ErrorKind::bigrading_violation, "weights from the splitting: " + *defect);
  }
  return W;
}

/// Every monomial of e has type (k,k). e must lie in degree 2k.
inline bool check_euler_purity(const SplitMixedHodgeCdga& S, const Element& e, int k) {
  const Element el = S.presentation().rehome(e);
  if (auto d = el.degree(); d && (*d != 2 * k || !el.is_homogeneous())) {
    throw Error(ErrorKind::degree_mismatch, "Euler element " + el.to_string() + " is not of degree " + std::to_string(2 * k));
  }
  for (const auto& [m, c] : el.terms()) {
    if (!(S.type(m) == HodgeType{k, k})) return false;
  }
  return true;
}

class FilteredThomModel {
 public:
  FilteredThomModel(const SplitMixedHodgeCdga& S, const Element& e, int k)
      : model_(S.presentation(), e, 2 * k), k_(k) {
    const auto& M = model_.algebra();
    types_.resize(static_cast<std::size_t>(M.top()) + 1);
    for (int n = 2 * k; n <= M.top(); ++n) {
      for (const auto& m : model_.base_model().basis(n - 2 * k)) {
        const HodgeType t = S.type(m);
        types_[static_cast<std::size_t>(n)].push_back({t.p + k, t.q + k});
      }
    }
    validate();
  }

  const ThomModel& model() const { return model_; }
  int chern_rank() const { return k_; }

  HodgeType type(int n, Index i) const { return types_.at(static_cast<std::size_t>(n)).at(i); }
  int weight(int n, Index i) const { return type(n, i).p + type(n, i).q; }

  /// dim W_p M^n = dim W_{p-2k} A^{n-2k}.
  std::size_t weight_filtration(int p, int n) const {
    return count(n, [&](HodgeType t) { return t.p + t.q <= p; });
  }
  /// dim F^p M^n = dim F^{p-k} A^{n-2k}, with F read off the first index.
  std::size_t hodge_filtration(int p, int n) const {
    return count(n, [&](HodgeType t) { return t.p >= p; });
  }

  /// p + q ≥ degree on every basis element.
  bool smooth_type() const {
    for (std::size_t n = 0; n < types_.size(); ++n) {
      for (const auto& t : types_[n]) {
        if (t.p + t.q < static_cast<int>(n)) return false;
      }
    }
    return true;
  }

 private:
  template <class Pred>
  std::size_t count(int n, Pred pred) const {
    if (n < 0 || n >= static_cast<int>(types_.size())) return 0;
    std::size_t c = 0;
    for (const auto& t : types_[static_cast<std::size_t>(n)]) c += pred(t) ? 1 : 0;
    return c;
  }

  void validate() const {
    const auto& M = model_.algebra();
    auto fail = [&](const std::string& what) {
      throw Error(ErrorKind::bigrading_violation, "Thom model: " + what);
    };
    for (int n = 0; n <= M.top(); ++n) {
      for (Index i = 0; i < M.dim(n); ++i) {
        if (n < M.top()) {
          for (const auto& [j, c] : M.block(n).differential[i]) {
            if (!(type(n + 1, j) == type(n, i))) fail("d(" + M.block(n).labels[i] + ") changes type");
          }
        }
        for (int l = n; n + l <= M.top(); ++l) {
          for (Index j = 0; j < M.dim(l); ++j) {
            const HodgeType a = type(n, i), b = type(l, j);
            for (const auto& [t, c] : M.product(n, i, l, j)) {
              if (!(type(n + l, t) == HodgeType{a.p + b.p, a.q + b.q})) {
                fail(M.block(n).labels[i] + " * " + M.block(l).labels[j] + " is not type-additive");
              }
            }
          }
        }
      }
    }
  }

  ThomModel model_;
  int k_;
  std::vector<std::vector<HodgeType>> types_;
};

inline FilteredThomModel thom_mhs(const SplitMixedHodgeCdga& S, const Element& e, int k) {
  if (!check_euler_purity(S, e, k)) {
    throw Error(ErrorKind::euler_not_pure, "Euler class " + S.presentation().rehome(e).to_string() +
                                               " is not of pure type (" + std::to_string(k) + "," + std::to_string(k) + ")");
  }
  return FilteredThomModel(S, e, k);
}

}  // namespace thomforge
