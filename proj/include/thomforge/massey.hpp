#pragma once

// Massey products through Massey systems. Signs follow a_{i,j} = Σ m̄_{i,l} m_{l+1,j}
// with m̄ = (-1)^{|m|} m; the triple product is then [x̄μ + λ̄z] with dλ = x̄y, dμ = ȳz.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "thomforge/thom.hpp"

namespace thomforge {

namespace detail {

inline Cochain bar(const Cochain& c) { return {c.degree, Rational(parity_sign(c.degree)) * c.vector}; }
inline Cochain add(const Cochain& a, const Cochain& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return {a.degree, a.vector + b.vector};
}
inline Cochain shift(const Cochain& c, int n) { return {c.degree + n, c.vector}; }

/// Some c with dc = t, or nullopt.
inline std::optional<Cochain> primitive(const DgAlgebra& A, const Cochain& t, bool reverse) {
  if (t.is_zero()) return Cochain{t.degree - 1, {}};
  if (t.degree < 1) return std::nullopt;
  auto s = solve(A.block(t.degree - 1).differential, t.vector, reverse);
  if (!s) return std::nullopt;
  return Cochain{t.degree - 1, std::move(*s)};
}

inline bool in_span(const std::vector<SparseVector>& span, const SparseVector& v) {
  Echelon e(false);
  for (const auto& s : span) e.insert(s, 0);
  return e.in_span(v);
}

}  // namespace detail

struct MasseyProduct {
  int degree = 0;
  bool defined = false;
  std::string obstruction;  // why the product is empty
  Cochain representative;
  Cochain lambda, mu;
  SparseVector representative_class;         // in the representatives of `cohomology`
  std::vector<Cochain> indeterminacy;        // cocycles spanning the indeterminacy
  std::vector<SparseVector> indeterminacy_classes;  // a basis of its image in cohomology
  std::shared_ptr<const Cohomology> cohomology;

  std::string representative_text() const {
    return defined ? cohomology->algebra().format(representative) : "empty";
  }
  std::vector<std::string> indeterminacy_text() const {
    std::vector<std::string> out;
    for (const auto& v : indeterminacy_classes) out.push_back(format_vector(labels(), v));
    return out;
  }
  std::vector<std::string> labels() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < cohomology->dim(degree); ++i) {
      out.push_back("[" + cohomology->algebra().format(cohomology->representative(degree, i)) + "]");
    }
    return out;
  }
};

/// ⟨x, y, z⟩ for cocycles of A. `reverse` picks the other particular solutions of dλ, dμ.
inline MasseyProduct triple_massey(const DgAlgebra& A, const Cochain& x, const Cochain& y, const Cochain& z,
                                   int up_to, bool reverse = false) {
  MasseyProduct P;
  P.degree = x.degree + y.degree + z.degree - 1;
  if (P.degree > up_to) {
    throw Error(ErrorKind::cutoff_exceeded, "the product lives in degree " + std::to_string(P.degree) +
                                                " beyond the requested bound " + std::to_string(up_to));
  }
  P.cohomology = std::make_shared<const Cohomology>(A, P.degree);
  const Cohomology& H = *P.cohomology;
  for (const Cochain* c : {&x, &y, &z}) {
    if (!H.is_cocycle(*c)) throw Error(ErrorKind::invalid_argument, A.format(*c) + " is not closed");
  }
  auto lambda = detail::primitive(A, A.multiply(detail::bar(x), y), reverse);
  if (!lambda) {
    P.obstruction = "[" + A.format(x) + "][" + A.format(y) + "] is nonzero";
    return P;
  }
  auto mu = detail::primitive(A, A.multiply(detail::bar(y), z), reverse);
  if (!mu) {
    P.obstruction = "[" + A.format(y) + "][" + A.format(z) + "] is nonzero";
    return P;
  }
  P.defined = true;
  P.lambda = *lambda;
  P.mu = *mu;
  P.representative = detail::add(A.multiply(detail::bar(x), P.mu), A.multiply(detail::bar(P.lambda), z));
  P.representative.degree = P.degree;
  P.representative_class = H.coordinates(P.representative);

  const int right = y.degree + z.degree - 1, left = x.degree + y.degree - 1;
  for (Index i = 0; i < H.dim(right); ++i) P.indeterminacy.push_back(A.multiply(detail::bar(x), H.representative(right, i)));
  for (Index i = 0; i < H.dim(left); ++i) P.indeterminacy.push_back(A.multiply(detail::bar(H.representative(left, i)), z));
  Echelon basis(false);
  for (auto& c : P.indeterminacy) {
    c.degree = P.degree;
    const SparseVector k = H.coordinates(c);
    if (!k.empty() && !basis.in_span(k)) {
      basis.insert(k, 0);
      P.indeterminacy_classes.push_back(k);
    }
  }
  return P;
}

inline MasseyProduct triple_massey(const CdgaPresentation& A, const Element& x, const Element& y, const Element& z,
                                   int up_to, bool reverse = false) {
  const PresentationModel M(A);
  return triple_massey(M.algebra(), M.cochain(x), M.cochain(y), M.cochain(z), up_to, reverse);
}

/// Whether 0 lies in representative + span(indeterminacy).
inline bool contains_zero(const MasseyProduct& P) {
  if (!P.defined) throw Error(ErrorKind::undefined_product, "Massey product is empty: " + P.obstruction);
  return detail::in_span(P.indeterminacy_classes, P.representative_class);
}

struct ThomTripleReport {
  MasseyProduct thom;     // ⟨w_x, w_y, w_z⟩ in A[e]
  MasseyProduct base;     // ⟨x, ey, z⟩ in A
  MasseyProduct variant;  // ⟨ex, y, ez⟩ in A
  bool defined_agree = false;
  bool representatives_match = false;  // w(e·base) and thom are the same affine set
  bool indeterminacy_match = false;
  bool zero_agrees = false;            // thom contains 0 ⇔ e·base contains 0
  bool variant_match = false;          // ⟨ex, y, ez⟩ = e·⟨x, ey, z⟩
  bool thom_contains_zero = false;
  bool ok() const { return defined_agree && representatives_match && indeterminacy_match && zero_agrees && variant_match; }
};

namespace detail {

/// Image of an affine set u + span(U) of A under u ↦ [w_{e·u}], in the classes of H.
struct AffineClasses {
  SparseVector point;
  std::vector<SparseVector> span;
};

inline AffineClasses thom_image(const ThomModel& T, const Cohomology& H, const MasseyProduct& P, bool times_e) {
  const DgAlgebra& A = T.base_model().algebra();
  const Cochain e = T.base_model().cochain(T.euler(), T.shift());
  auto move = [&](const Cochain& c) {
    const Cochain u = times_e ? A.multiply(e, c) : c;
    return H.coordinates(shift({c.degree + (times_e ? T.shift() : 0), u.vector}, T.shift()));
  };
  AffineClasses out{move(P.representative), {}};
  for (const auto& c : P.indeterminacy) out.span.push_back(move(c));
  return out;
}

inline bool same_span(const std::vector<SparseVector>& a, const std::vector<SparseVector>& b) {
  std::vector<SparseVector> both = a;
  both.insert(both.end(), b.begin(), b.end());
  const std::size_t r = rank_of(both);
  return r == rank_of(a) && r == rank_of(b);
}

}  // namespace detail

/// Compares ⟨w_x, w_y, w_z⟩ in A[e] with e·⟨x, ey, z⟩ and ⟨ex, y, ez⟩ in A.
inline ThomTripleReport thom_triple_correspondence(const CdgaPresentation& A, const Element& e, const Element& x,
                                                   const Element& y, const Element& z, int up_to,
                                                   std::optional<int> rank = std::nullopt) {
  const Element el = A.rehome(e);
  const int n = rank.value_or(el.degree().value_or(2));
  const ThomModel T(A, el, n);
  const PresentationModel& M = T.base_model();
  ThomTripleReport r;
  r.thom = triple_massey(T.algebra(), T.cochain(T.w(x)), T.cochain(T.w(y)), T.cochain(T.w(z)), up_to);
  const int base_top = up_to - 2 * n;
  const Cochain ec = M.cochain(el, n);
  const Cochain xc = M.cochain(x), yc = M.cochain(y), zc = M.cochain(z);
  r.base = triple_massey(M.algebra(), xc, M.algebra().multiply(ec, yc), zc, base_top);
  r.variant = triple_massey(M.algebra(), M.algebra().multiply(ec, xc), yc, M.algebra().multiply(ec, zc), up_to - n);
  r.defined_agree = r.thom.defined == r.base.defined && r.base.defined == r.variant.defined;
  if (!r.thom.defined || !r.defined_agree) {
    r.representatives_match = r.indeterminacy_match = r.zero_agrees = r.variant_match = r.defined_agree;
    return r;
  }
  const Cohomology& HT = *r.thom.cohomology;
  const auto image = detail::thom_image(T, HT, r.base, true);
  const auto variant = detail::thom_image(T, HT, r.variant, false);
  r.indeterminacy_match = detail::same_span(image.span, r.thom.indeterminacy_classes);
  r.representatives_match =
      r.indeterminacy_match && detail::in_span(r.thom.indeterminacy_classes, image.point - r.thom.representative_class);
  r.thom_contains_zero = contains_zero(r.thom);
  r.zero_agrees = r.thom_contains_zero == detail::in_span(image.span, image.point);
  r.variant_match = detail::same_span(variant.span, image.span) && detail::in_span(image.span, variant.point - image.point);
  return r;
}

enum class SVariant { first, second };

/// Power of e multiplying x_{i,i}: φ(i) for the first map, 1 - φ(i) for the second.
inline int euler_power(int i, SVariant v) {
  const int phi = i % 2 != 0 ? 1 : 0;
  return v == SVariant::first ? phi : 1 - phi;
}

/// s(i,j) with s(i,j) = s(i,l) + s(l+1,j) + 1 and s(i,i) = -euler_power(i).
inline int s_exponent(int i, int j, SVariant v) {
  if (i < 1 || j < i) throw Error(ErrorKind::invalid_argument, "s_exponent needs 1 <= i <= j");
  const int phi = i % 2 != 0 ? 1 : 0;
  const int num = v == SVariant::first ? j - i - phi : j - i + phi - 1;
  return num >= 0 ? num / 2 : -((1 - num) / 2);
}

struct MasseySystem {
  int k = 0;
  std::map<std::pair<int, int>, Cochain> m;  // (1,k) absent
  std::map<std::pair<int, int>, Cochain> a;

  const Cochain& product() const { return a.at({1, k}); }
};

/// First failing axiom, or nullopt. `x` defaults to the diagonal of m.
inline std::optional<std::string> validate_massey_system(const DgAlgebra& A, const MasseySystem& s,
                                                         const std::vector<Cochain>& x = {}) {
  auto at = [](int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; };
  if (s.k < 2) return std::string("a Massey system needs k >= 2");
  for (int i = 1; i <= s.k; ++i) {
    for (int j = i; j <= s.k; ++j) {
      const bool last = i == 1 && j == s.k;
      if (!s.a.count({i, j})) return "a" + at(i, j) + " is missing";
      if (!last && !s.m.count({i, j})) return "m" + at(i, j) + " is missing";
      if (last && s.m.count({i, j})) return "m" + at(i, j) + " must not be given";
    }
  }
  for (int i = 1; i <= s.k; ++i) {
    if (!s.a.at({i, i}).is_zero()) return "axiom 1 fails: a" + at(i, i) + " is nonzero";
    if (!x.empty() && !(s.m.at({i, i}) == x.at(static_cast<std::size_t>(i - 1)))) {
      return "axiom 2 fails: m" + at(i, i) + " differs from x" + at(i, i);
    }
  }
  for (const auto& [ij, mc] : s.m) {
    if (!(A.d(mc) == s.a.at(ij))) return "axiom 3 fails at " + at(ij.first, ij.second);
  }
  for (int i = 1; i <= s.k; ++i) {
    for (int j = i + 1; j <= s.k; ++j) {
      Cochain sum{s.a.at({i, j}).degree, {}};
      for (int l = i; l < j; ++l) sum = detail::add(sum, A.multiply(detail::bar(s.m.at({i, l})), s.m.at({l + 1, j})));
      if (!(sum == s.a.at({i, j}))) return "axiom 4 fails at " + at(i, j);
    }
  }
  return std::nullopt;
}

struct SystemAttempt {
  std::optional<MasseySystem> system;
  std::string failure;
};

/// Builds a system by solving d(m_{i,j}) = a_{i,j} in order of increasing j - i.
inline SystemAttempt build_massey_system(const DgAlgebra& A, const std::vector<Cochain>& x, bool reverse = false) {
  MasseySystem s;
  s.k = static_cast<int>(x.size());
  if (s.k < 2) return {std::nullopt, "a Massey system needs k >= 2"};
  for (int i = 1; i <= s.k; ++i) {
    const Cochain& xi = x[static_cast<std::size_t>(i - 1)];
    if (!A.d(xi).is_zero()) return {std::nullopt, "x(" + std::to_string(i) + ") is not closed"};
    s.m[{i, i}] = xi;
    s.a[{i, i}] = {xi.degree + 1, {}};
  }
  for (int len = 1; len < s.k; ++len) {
    for (int i = 1; i + len <= s.k; ++i) {
      const int j = i + len;
      Cochain sum{s.m.at({i, i}).degree + s.m.at({i + 1, j}).degree, {}};
      for (int l = i; l < j; ++l) sum = detail::add(sum, A.multiply(detail::bar(s.m.at({i, l})), s.m.at({l + 1, j})));
      s.a[{i, j}] = sum;
      if (i == 1 && j == s.k) continue;
      if (sum.degree - 1 > A.faithful_top()) {
        throw Error(ErrorKind::cutoff_exceeded, "a(" + std::to_string(i) + "," + std::to_string(j) + ") lies beyond the faithful range");
      }
      auto prim = detail::primitive(A, sum, reverse);
      if (!prim) {
        return {std::nullopt, "a(" + std::to_string(i) + "," + std::to_string(j) + ") = " + A.format(sum) + " is not exact"};
      }
      s.m[{i, j}] = *prim;
    }
  }
  return {std::move(s), {}};
}

/// (x_{i,i}) and a system for y_{i,i} = e^{euler_power(i)} x_{i,i} in A give the
/// system {w(e^{s(i,j)} m_{i,j})}, {w(e^{s(i,j)} a_{i,j})} for (w(x_{i,i})) in A[e].
inline MasseySystem lift_massey_system(const ThomModel& T, const std::vector<Cochain>& x, const MasseySystem& s,
                                       SVariant v) {
  const DgAlgebra& A = T.base_model().algebra();
  if (auto bad = validate_massey_system(A, s)) throw Error(ErrorKind::invalid_massey_system, "input system: " + *bad);
  if (static_cast<int>(x.size()) != s.k) throw Error(ErrorKind::invalid_massey_system, "need one class per diagonal entry");
  const Cochain e = T.base_model().cochain(T.euler(), T.shift());
  auto power = [&](Cochain c, int p) {
    for (int t = 0; t < p; ++t) c = A.multiply(e, c);
    return c;
  };
  for (int i = 1; i <= s.k; ++i) {
    const Cochain& xi = x[static_cast<std::size_t>(i - 1)];
    if (!(power(xi, euler_power(i, v)) == s.m.at({i, i}))) {
      throw Error(ErrorKind::invalid_massey_system, "y(" + std::to_string(i) + ") is not e^" +
                                                   std::to_string(euler_power(i, v)) + " x(" + std::to_string(i) + ")");
    }
  }
  const int n = T.shift();
  MasseySystem out;
  out.k = s.k;
  for (const auto& [ij, c] : s.a) {
    const auto [i, j] = ij;
    if (i == j) {
      const Cochain& xi = x[static_cast<std::size_t>(i - 1)];
      out.m[ij] = detail::shift(xi, n);
      out.a[ij] = {xi.degree + n + 1, {}};
      continue;
    }
    const int p = s_exponent(i, j, v);
    out.a[ij] = detail::shift(power(c, p), n);
    if (s.m.count(ij)) out.m[ij] = detail::shift(power(s.m.at(ij), p), n);
  }
  return out;
}

/// Restriction along B → Th: w_u ↦ e·u.
inline Cochain thom_pullback(const ThomModel& T, const Cochain& c) {
  const DgAlgebra& A = T.base_model().algebra();
  return A.multiply(T.base_model().cochain(T.euler(), T.shift()), {c.degree - T.shift(), c.vector});
}

}  // namespace thomforge
