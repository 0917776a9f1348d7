#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles/naive_cdga.hpp"
#include "thomforge/thomforge.hpp"

namespace support {

inline std::string fixture_path(const std::string& name) { return std::string(THOMFORGE_FIXTURES) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline thomforge::CdgaPresentation fixture(const std::string& name) {
  return thomforge::make_cdga(read_file(fixture_path(name)), std::nullopt, name);
}

inline const std::vector<std::string>& all_fixtures() {
  static const std::vector<std::string> names{
      "contractible.cdga",  "cp2-cohomology.cdga", "cp2-hodge.cdga", "cp2.cdga",      "cp3-cohomology.cdga",
      "cp4.cdga",           "cpN.cdga",            "heisenberg.cdga", "massey-fixture.cdga", "massey-thom.cdga",
      "massey4.cdga",       "mixed-hodge.cdga",    "s2xs2.cdga",     "s3.cdga",       "torus.cdga"};
  return names;
}

inline oracle::NaiveCdga to_naive(const thomforge::CdgaPresentation& A) {
  oracle::NaiveCdga n;
  n.truncation = A.truncation();
  for (const auto& g : A.generators()) n.degrees.push_back(g.degree);
  for (std::size_t g = 0; g < A.size(); ++g) {
    oracle::Poly p;
    const thomforge::Element dg = A.differential_of(g);
    for (const auto& [m, c] : dg.terms()) {
      oracle::Word w;
      for (std::size_t h = 0; h < A.size(); ++h) {
        for (int e = 0; e < m[h]; ++e) w.push_back(static_cast<int>(h));
      }
      p[w] = c;
    }
    n.d.push_back(std::move(p));
  }
  return n;
}

inline oracle::Poly to_poly(const thomforge::Element& x) {
  oracle::Poly p;
  for (const auto& [m, c] : x.terms()) {
    oracle::Word w;
    for (std::size_t h = 0; h < m.exponents().size(); ++h) {
      for (int e = 0; e < m[h]; ++e) w.push_back(static_cast<int>(h));
    }
    p[w] = c;
  }
  return p;
}

/// Random homogeneous element of degree n with small integer coefficients.
inline thomforge::Element random_element(const thomforge::CdgaPresentation& A, int n, std::mt19937_64& rng) {
  thomforge::Element x = A.zero();
  std::uniform_int_distribution<int> coeff(-3, 3);
  for (const auto& m : thomforge::basis(A, n)) x += A.monomial(m, coeff(rng));
  return x;
}

/// Random nonzero rational with small numerator and denominator.
inline thomforge::Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  int p = 0;
  while (p == 0) p = num(rng);
  thomforge::Rational r(p, den(rng));
  r.canonicalize();
  return r;
}

}  // namespace support
