#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "thomforge/error.hpp"

namespace thomforge {

/// Arbitrary-precision exact rational. Every coefficient in the library is one.
using Rational = mpq_class;

inline Rational parse_rational(std::string_view text) {
  Rational r;
  if (text.empty() || r.set_str(std::string(text), 10) != 0) {
    throw Error(ErrorKind::parse, "not a rational literal: '" + std::string(text) + "'");
  }
  if (r.get_den() == 0) throw Error(ErrorKind::parse, "zero denominator in '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational sign_of(bool negative) { return negative ? Rational(-1) : Rational(1); }

/// (-1)^k for a possibly negative integer k.
inline int parity_sign(long k) { return (k % 2 == 0) ? 1 : -1; }

}  // namespace thomforge
