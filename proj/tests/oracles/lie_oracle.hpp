#pragma once

// Free graded Lie algebra dimensions as the free non-associative algebra on
// binary trees modulo graded antisymmetry and Jacobi. Antisymmetry is applied
// by canonically ordering the children of every node (trees that equal minus
// themselves vanish); the Jacobi ideal is then spanned, degree by degree, by
// top-level Jacobi relations and brackets of lower relations with trees.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace oracle {

class LieQuotient {
 public:
  using Q = mpq_class;
  using Vec = std::map<int, Q>;  // tree id -> coefficient

  LieQuotient(std::vector<int> degrees, int top) : degrees_(std::move(degrees)), top_(top) {
    by_degree_.resize(static_cast<std::size_t>(top) + 1);
    relations_.resize(static_cast<std::size_t>(top) + 1);
    for (int g = 0; g < static_cast<int>(degrees_.size()); ++g) {
      if (degrees_[g] <= top) intern(Node{g, -1, -1, degrees_[g]});
    }
    for (int n = 2; n <= top; ++n) {
      for (int a = 1; a < n; ++a) {
        const auto left = by_degree_[a];
        const auto right = by_degree_[n - a];
        for (int l : left) {
          for (int r : right) (void)bracket(l, r);
        }
      }
    }
    for (int n = 1; n <= top; ++n) build_relations(n);
  }

  /// dim L_n = #canonical nonzero trees - rank of the Jacobi ideal.
  std::size_t dim(int n) const { return by_degree_[n].size() - relations_[n].size(); }

 private:
  struct Node {
    int leaf, left, right, degree;
    bool operator<(const Node& o) const {
      return std::tie(leaf, left, right) < std::tie(o.leaf, o.left, o.right);
    }
  };

  int intern(const Node& n) {
    auto it = ids_.find(n);
    if (it != ids_.end()) return it->second;
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back(n);
    ids_.emplace(n, id);
    by_degree_[n.degree].push_back(id);
    return id;
  }

  /// Canonical form of [a, b] as (sign, id), or nullopt when it vanishes.
  std::optional<std::pair<int, int>> bracket(int a, int b) {
    const int da = nodes_[a].degree, db = nodes_[b].degree;
    if (da + db > top_) return std::nullopt;
    int sign = 1;
    if (a > b) {
      std::swap(a, b);
      sign = ((da * db) % 2 == 0) ? -1 : 1;  // [a,b] = -(-1)^{|a||b|}[b,a]
    }
    if (a == b && da % 2 == 0) return std::nullopt;
    return std::make_pair(sign, intern(Node{-1, a, b, da + db}));
  }

  Vec bracket_vec(const Vec& x, int t, bool tree_on_left) {
    Vec out;
    for (const auto& [id, c] : x) {
      auto r = tree_on_left ? bracket(t, id) : bracket(id, t);
      if (!r) continue;
      out[r->second] += c * r->first;
      if (out[r->second] == 0) out.erase(r->second);
    }
    return out;
  }

  void insert(int n, Vec v) {
    auto& rows = relations_[n];
    while (!v.empty()) {
      const int pivot = v.begin()->first;
      auto it = rows.find(pivot);
      if (it == rows.end()) {
        const Q lead = v.begin()->second;
        for (auto& [k, c] : v) c /= lead;
        rows.emplace(pivot, std::move(v));
        return;
      }
      const Q f = v.begin()->second;
      for (const auto& [k, c] : it->second) {
        v[k] -= f * c;
        if (v[k] == 0) v.erase(k);
      }
    }
  }

  void build_relations(int n) {
    // top-level Jacobi on triples of trees
    for (int a = 1; a < n; ++a) {
      for (int b = 1; a + b < n; ++b) {
        const int c = n - a - b;
        for (int x : by_degree_[a]) {
          for (int y : by_degree_[b]) {
            for (int z : by_degree_[c]) {
              Vec rel;
              auto term = [&](int p, int q, int r, int sign) {
                auto inner = bracket(q, r);
                if (!inner) return;
                auto outer = bracket(p, inner->second);
                if (!outer) return;
                rel[outer->second] += Q(sign * inner->first * outer->first);
              };
              const int dx = nodes_[x].degree, dy = nodes_[y].degree, dz = nodes_[z].degree;
              term(x, y, z, (dx * dz) % 2 ? -1 : 1);
              term(y, z, x, (dy * dx) % 2 ? -1 : 1);
              term(z, x, y, (dz * dy) % 2 ? -1 : 1);
              for (auto it = rel.begin(); it != rel.end();) it = it->second == 0 ? rel.erase(it) : std::next(it);
              if (!rel.empty()) insert(n, std::move(rel));
            }
          }
        }
      }
    }
    // relations of lower degree bracketed with trees
    for (int a = 1; a < n; ++a) {
      for (const auto& [pivot, row] : relations_[a]) {
        for (int t : by_degree_[n - a]) insert(n, bracket_vec(row, t, false));
      }
    }
  }

  std::vector<int> degrees_;
  int top_;
  std::vector<Node> nodes_;
  std::map<Node, int> ids_;
  std::vector<std::vector<int>> by_degree_;
  std::vector<std::map<int, Vec>> relations_;
};

using TensorWord = std::vector<int>;
using TensorPoly = std::map<TensorWord, mpq_class>;

/// d applied twice to generator g, with d extended to tensor words by the
/// signed derivation rule. Inputs are generator degrees and d on generators.
inline TensorPoly d_squared(const std::vector<int>& degrees, const std::vector<TensorPoly>& d, std::size_t g) {
  auto apply = [&](const TensorPoly& p) {
    TensorPoly out;
    for (const auto& [w, c] : p) {
      int before = 0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        for (const auto& [dw, dc] : d[static_cast<std::size_t>(w[i])]) {
          TensorWord t(w.begin(), w.begin() + static_cast<long>(i));
          t.insert(t.end(), dw.begin(), dw.end());
          t.insert(t.end(), w.begin() + static_cast<long>(i) + 1, w.end());
          out[t] += (before % 2 ? -1 : 1) * c * dc;
        }
        before += degrees[static_cast<std::size_t>(w[i])];
      }
    }
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
  };
  return apply(apply(d[g]));
}

}  // namespace oracle
