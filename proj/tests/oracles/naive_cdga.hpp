#pragma once

// Brute-force reference arithmetic for tests. Monomials are unordered words of
// generator indices, sorted by bubble sort while counting odd transpositions;
// ranks come from dense Gaussian elimination. Shares nothing with the library
// except the input data (generator degrees and the differential on generators).

#include <gmpxx.h>

#include <map>
#include <utility>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Word = std::vector<int>;  // generator indices, sorted ascending when canonical
using Poly = std::map<Word, Q>;

struct NaiveCdga {
  std::vector<int> degrees;
  std::vector<Poly> d;  // d of each generator
  int truncation = 0;

  int degree(const Word& w) const {
    int s = 0;
    for (int g : w) s += degrees[g];
    return s;
  }

  /// Sorts a word; returns the sign, or 0 when an odd generator repeats.
  int canonicalize(Word& w) const {
    int sign = 1;
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (std::size_t j = 0; j + 1 < w.size() - i; ++j) {
        if (w[j] > w[j + 1]) {
          if (degrees[w[j]] % 2 && degrees[w[j + 1]] % 2) sign = -sign;
          std::swap(w[j], w[j + 1]);
        }
      }
    }
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (w[i] == w[i + 1] && degrees[w[i]] % 2) return 0;
    }
    return sign;
  }

  void add(Poly& p, Word w, const Q& c) const {
    if (c == 0) return;
    const int s = canonicalize(w);
    if (s == 0 || degree(w) > truncation) return;
    Q& slot = p[w];
    slot += s * c;
    if (slot == 0) p.erase(w);
  }

  Poly mul(const Poly& a, const Poly& b) const {
    Poly out;
    for (const auto& [wa, ca] : a) {
      for (const auto& [wb, cb] : b) {
        Word w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        add(out, w, ca * cb);
      }
    }
    return out;
  }

  Poly diff(const Poly& p) const {
    Poly out;
    for (const auto& [w, c] : p) {
      int before = 0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        const Q sign = (before % 2) ? -1 : 1;
        Poly left{{Word(w.begin(), w.begin() + static_cast<long>(i)), Q(1)}};
        Poly right{{Word(w.begin() + static_cast<long>(i) + 1, w.end()), Q(1)}};
        Poly term = mul(mul(left, d[w[i]]), right);
        for (const auto& [tw, tc] : term) add(out, tw, sign * c * tc);
        before += degrees[w[i]];
      }
    }
    return out;
  }

  /// All canonical words of degree n, by recursion over non-decreasing indices.
  std::vector<Word> basis(int n) const {
    std::vector<Word> out;
    Word cur;
    auto rec = [&](auto&& self, int start, int remaining) -> void {
      if (remaining == 0) {
        out.push_back(cur);
        return;
      }
      for (int g = start; g < static_cast<int>(degrees.size()); ++g) {
        if (degrees[g] > remaining) continue;
        if (degrees[g] % 2 && !cur.empty() && cur.back() == g) continue;
        cur.push_back(g);
        self(self, degrees[g] % 2 ? g + 1 : g, remaining - degrees[g]);
        cur.pop_back();
      }
    };
    rec(rec, 0, n);
    return out;
  }
};

/// Rank of a dense matrix (rows of equal length) over Q.
inline std::size_t dense_rank(std::vector<std::vector<Q>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][c] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const Q f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

/// Dense matrix of d: degree n -> n+1, rows indexed by the degree n+1 basis.
inline std::vector<std::vector<Q>> d_matrix(const NaiveCdga& A, int n) {
  const auto src = A.basis(n);
  const auto dst = A.basis(n + 1);
  std::map<Word, std::size_t> row;
  for (std::size_t i = 0; i < dst.size(); ++i) row[dst[i]] = i;
  std::vector<std::vector<Q>> m(dst.size(), std::vector<Q>(src.size()));
  for (std::size_t j = 0; j < src.size(); ++j) {
    for (const auto& [w, c] : A.diff(Poly{{src[j], Q(1)}})) m[row.at(w)][j] = c;
  }
  return m;
}

/// dim H^n by rank-nullity: dim A^n - rank d_n - rank d_{n-1}.
inline std::size_t betti(const NaiveCdga& A, int n) {
  const std::size_t dim = A.basis(n).size();
  const std::size_t rank_out = dense_rank(d_matrix(A, n));
  const std::size_t rank_in = n > 0 ? dense_rank(d_matrix(A, n - 1)) : 0;
  return dim - rank_out - rank_in;
}

}  // namespace oracle
