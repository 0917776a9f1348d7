#pragma once

// Brute-force triple Massey products over a NaiveCdga: every pair (λ, μ) with
// coefficients in {-1, 0, 1} on the monomial basis is tried, and exactness is
// decided by comparing dense ranks.

#include <vector>

#include "oracles/naive_cdga.hpp"

namespace oracle {

inline Poly scale(const Poly& p, const Q& c) {
  Poly out;
  for (const auto& [w, v] : p) {
    if (v * c != 0) out[w] = v * c;
  }
  return out;
}

inline Poly plus(Poly a, const Poly& b) {
  for (const auto& [w, c] : b) {
    a[w] += c;
    if (a[w] == 0) a.erase(w);
  }
  return a;
}

inline Poly bar(const Poly& p, int degree) { return degree % 2 ? scale(p, -1) : p; }

/// Whether p (homogeneous of degree n) lies in d(A^{n-1}).
inline bool is_exact(const NaiveCdga& A, const Poly& p, int n) {
  if (p.empty()) return true;
  if (n == 0) return false;
  auto m = d_matrix(A, n - 1);
  const auto rows = A.basis(n);
  const std::size_t before = dense_rank(m);
  if (m.empty()) m.assign(rows.size(), {});
  for (std::size_t r = 0; r < rows.size(); ++r) {
    auto it = p.find(rows[r]);
    m[r].push_back(it == p.end() ? Q(0) : it->second);
  }
  return dense_rank(m) == before;
}

/// All elements of degree n with coefficients in {-1, 0, 1}.
inline std::vector<Poly> small_elements(const NaiveCdga& A, int n) {
  std::vector<Poly> out{Poly{}};
  if (n < 0) return out;
  for (const auto& w : A.basis(n)) {
    std::vector<Poly> next;
    for (const auto& p : out) {
      for (int c : {-1, 0, 1}) next.push_back(plus(p, c ? Poly{{w, Q(c)}} : Poly{}));
    }
    out = std::move(next);
  }
  return out;
}

/// Representatives x̄μ + λ̄z over all small solutions of dλ = x̄y, dμ = ȳz.
inline std::vector<Poly> triple_representatives(const NaiveCdga& A, const Poly& x, int p, const Poly& y, int q,
                                                 const Poly& z, int r) {
  const Poly xy = A.mul(bar(x, p), y), yz = A.mul(bar(y, q), z);
  std::vector<Poly> lambdas, mus;
  for (const auto& l : small_elements(A, p + q - 1)) {
    if (A.diff(l) == xy) lambdas.push_back(l);
  }
  for (const auto& m : small_elements(A, q + r - 1)) {
    if (A.diff(m) == yz) mus.push_back(m);
  }
  std::vector<Poly> out;
  for (const auto& l : lambdas) {
    for (const auto& m : mus) out.push_back(plus(A.mul(bar(x, p), m), A.mul(bar(l, p + q - 1), z)));
  }
  return out;
}

}  // namespace oracle
