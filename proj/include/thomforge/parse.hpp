#pragma once

// Text and JSON forms of presentations.
//
//   # comment
//   gen x : 2 weight 2 type (1,1)
//   gen y : 5 weight 6
//   d y = x^3
//   truncate 12            (or: truncate 4 quotient)
//
// Expressions are rational polynomials in the generators with + - * / ^ and
// parentheses; division is by nonzero constants only.

#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "thomforge/cdga.hpp"

namespace thomforge {

namespace detail {

struct Token {
  enum Kind { ident, number, symbol, end } kind = end;
  std::string text;
  std::size_t column = 0;
};

inline std::vector<Token> tokenize(std::string_view s, const std::string& where) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::ident, std::string(s.substr(i, j - i)), i + 1});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::number, std::string(s.substr(i, j - i)), i + 1});
      i = j;
    } else if (std::string_view("+-*/^(),:=").find(c) != std::string_view::npos) {
      out.push_back({Token::symbol, std::string(1, c), i + 1});
      ++i;
    } else {
      throw Error(ErrorKind::parse, where + ", column " + std::to_string(i + 1) + ": unexpected character '" +
                                        std::string(1, c) + "'");
    }
  }
  out.push_back({Token::end, "", s.size() + 1});
  return out;
}

/// Recursive-descent expression parser. Alongside the value it tracks the
/// syntactic degree, so that d a = a*a is rejected even though a*a vanishes.
class ExprParser {
 public:
  ExprParser(const CdgaPresentation& A, std::vector<Token> tokens, std::string where)
      : A_(A), toks_(std::move(tokens)), where_(std::move(where)) {}

  struct Value {
    Element element;
    std::optional<int> degree;  // nullopt for the literal 0, which has every degree
    bool constant = false;
  };

  Value parse_all() {
    Value v = sum();
    if (peek().kind != Token::end) fail("unexpected '" + peek().text + "'");
    return v;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  bool accept(const char* sym) {
    if (peek().kind == Token::symbol && peek().text == sym) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::parse, where_ + ", column " + std::to_string(peek().column) + ": " + msg);
  }

  std::optional<int> combine_sum(std::optional<int> a, std::optional<int> b) const {
    if (!a) return b;
    if (!b) return a;
    if (*a != *b) {
      throw Error(ErrorKind::degree_mismatch, where_ + ": adding terms of degrees " + std::to_string(*a) +
                                                  " and " + std::to_string(*b));
    }
    return a;
  }

  Value sum() {
    bool negate = false;
    if (accept("-")) negate = true;
    else accept("+");
    Value acc = product();
    if (negate) acc.element = -acc.element;
    while (true) {
      if (accept("+")) {
        Value t = product();
        acc.degree = combine_sum(acc.degree, t.degree);
        acc.element += t.element;
        acc.constant = acc.constant && t.constant;
      } else if (accept("-")) {
        Value t = product();
        acc.degree = combine_sum(acc.degree, t.degree);
        acc.element -= t.element;
        acc.constant = acc.constant && t.constant;
      } else {
        return acc;
      }
    }
  }

  Value product() {
    Value acc = power();
    while (true) {
      if (accept("*")) {
        Value f = power();
        acc.element = acc.element * f.element;
        acc.degree = (acc.degree && f.degree) ? std::optional<int>(*acc.degree + *f.degree) : std::nullopt;
        acc.constant = acc.constant && f.constant;
      } else if (accept("/")) {
        Value f = power();
        if (!f.constant || f.element.is_zero()) fail("division is only by nonzero constants");
        acc.element *= Rational(1) / f.element.terms().begin()->second;
      } else {
        return acc;
      }
    }
  }

  Value power() {
    Value base = atom();
    if (accept("^")) {
      if (peek().kind != Token::number) fail("exponent must be a non-negative integer");
      const int e = std::stoi(toks_[pos_++].text);
      Value out{A_.one(), 0, true};
      for (int k = 0; k < e; ++k) out.element = out.element * base.element;
      out.degree = base.degree ? std::optional<int>(*base.degree * e) : (e == 0 ? std::optional<int>(0) : std::nullopt);
      out.constant = base.constant || e == 0;
      return out;
    }
    return base;
  }

  Value atom() {
    const Token& t = peek();
    if (t.kind == Token::number) {
      ++pos_;
      Rational r = parse_rational(t.text);
      if (r == 0) return {A_.zero(), std::nullopt, true};
      return {A_.constant(r), 0, true};
    }
    if (t.kind == Token::ident) {
      ++pos_;
      if (!A_.has_generator(t.text)) fail("unknown generator '" + t.text + "'");
      const std::size_t g = A_.index_of(t.text);
      return {A_.generator(g), A_.generators()[g].degree, false};
    }
    if (accept("(")) {
      Value v = sum();
      if (!accept(")")) fail("expected ')'");
      return v;
    }
    fail(t.kind == Token::end ? "unexpected end of expression" : "unexpected '" + t.text + "'");
  }

  const CdgaPresentation& A_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::string where_;
};

inline std::optional<int> env_truncation() {
  if (const char* v = std::getenv("THOMFORGE_TRUNCATE")) {
    try {
      const int n = std::stoi(v);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
    throw Error(ErrorKind::invalid_argument, "THOMFORGE_TRUNCATE must be a positive integer");
  }
  return std::nullopt;
}

}  // namespace detail

/// Parses an element of A from an expression such as "x*b - a*y".
inline Element parse_element(const CdgaPresentation& A, std::string_view text) {
  detail::ExprParser p(A, detail::tokenize(text, "expression"), "expression");
  return p.parse_all().element;
}

/// Builds a presentation from the text grammar. `truncation` overrides any
/// `truncate` line; without either, THOMFORGE_TRUNCATE is consulted.
inline CdgaPresentation make_cdga(std::string_view text, std::optional<int> truncation = std::nullopt,
                                  const std::string& source = "input") {
  struct DLine {
    std::string name;
    std::vector<detail::Token> expr;
    std::string where;
  };
  std::vector<Generator> gens;
  std::vector<DLine> dlines;
  std::optional<int> declared;
  bool quotient = false;

  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string where = source + ":" + std::to_string(lineno);
    auto toks = detail::tokenize(line, where);
    if (toks.front().kind == detail::Token::end) continue;
    auto fail = [&](const detail::Token& t, const std::string& msg) {
      throw Error(ErrorKind::parse, where + ", column " + std::to_string(t.column) + ": " + msg);
    };
    auto expect_int = [&](std::size_t& i) {
      bool neg = false;
      if (toks[i].kind == detail::Token::symbol && toks[i].text == "-") {
        neg = true;
        ++i;
      }
      if (toks[i].kind != detail::Token::number) fail(toks[i], "expected an integer");
      const int v = std::stoi(toks[i++].text);
      return neg ? -v : v;
    };
    auto expect_sym = [&](std::size_t& i, const char* s) {
      if (toks[i].kind != detail::Token::symbol || toks[i].text != s) fail(toks[i], std::string("expected '") + s + "'");
      ++i;
    };
    const std::string& head = toks[0].text;
    if (toks[0].kind == detail::Token::ident && head == "gen") {
      std::size_t i = 1;
      if (toks[i].kind != detail::Token::ident) fail(toks[i], "expected a generator name");
      Generator g;
      g.name = toks[i++].text;
      expect_sym(i, ":");
      g.degree = expect_int(i);
      while (toks[i].kind == detail::Token::ident) {
        if (toks[i].text == "weight") {
          ++i;
          g.weight = expect_int(i);
        } else if (toks[i].text == "type") {
          ++i;
          expect_sym(i, "(");
          HodgeType h;
          h.p = expect_int(i);
          expect_sym(i, ",");
          h.q = expect_int(i);
          expect_sym(i, ")");
          g.hodge = h;
        } else {
          fail(toks[i], "unknown attribute '" + toks[i].text + "'");
        }
      }
      if (toks[i].kind != detail::Token::end) fail(toks[i], "unexpected '" + toks[i].text + "'");
      gens.push_back(std::move(g));
    } else if (toks[0].kind == detail::Token::ident && head == "d") {
      std::size_t i = 1;
      if (toks[i].kind != detail::Token::ident) fail(toks[i], "expected a generator name");
      DLine dl{toks[i++].text, {}, where};
      expect_sym(i, "=");
      dl.expr.assign(toks.begin() + static_cast<std::ptrdiff_t>(i), toks.end());
      dlines.push_back(std::move(dl));
    } else if (toks[0].kind == detail::Token::ident && head == "truncate") {
      std::size_t i = 1;
      declared = expect_int(i);
      if (toks[i].kind == detail::Token::ident && toks[i].text == "quotient") {
        quotient = true;
        ++i;
      }
      if (toks[i].kind != detail::Token::end) fail(toks[i], "unexpected '" + toks[i].text + "'");
    } else {
      fail(toks[0], "expected 'gen', 'd' or 'truncate'");
    }
  }

  std::optional<int> n = truncation ? truncation : declared;
  if (!n) n = detail::env_truncation();
  if (!n) throw Error(ErrorKind::parse, source + ": no truncation degree given");
  CdgaPresentation A = CdgaPresentation::make(std::move(gens), *n, quotient);

  std::map<std::string, Element> images;
  for (auto& dl : dlines) {
    if (!A.has_generator(dl.name)) {
      throw Error(ErrorKind::unknown_generator, dl.where + ": d of undeclared generator '" + dl.name + "'");
    }
    if (images.count(dl.name)) throw Error(ErrorKind::parse, dl.where + ": second differential for '" + dl.name + "'");
    detail::ExprParser p(A, std::move(dl.expr), dl.where);
    auto v = p.parse_all();
    const int want = A.generators()[A.index_of(dl.name)].degree + 1;
    if (v.degree && *v.degree != want) {
      throw Error(ErrorKind::degree_mismatch, dl.where + ": d(" + dl.name + ") has degree " +
                                                  std::to_string(*v.degree) + ", expected " + std::to_string(want));
    }
    images.emplace(dl.name, v.element);
  }
  return A.with_differentials(images);
}

/// Text form accepted back by make_cdga.
inline std::string to_text(const CdgaPresentation& A) {
  std::ostringstream out;
  for (std::size_t g = 0; g < A.size(); ++g) {
    const auto& gen = A.generators()[g];
    out << "gen " << gen.name << " : " << gen.degree;
    if (gen.weight) out << " weight " << *gen.weight;
    if (gen.hodge) out << " type (" << gen.hodge->p << "," << gen.hodge->q << ")";
    out << "\n";
  }
  for (std::size_t g = 0; g < A.size(); ++g) {
    const Element dg = A.differential_of(g);
    if (!dg.is_zero()) out << "d " << A.generators()[g].name << " = " << dg.to_string() << "\n";
  }
  out << "truncate " << A.truncation() << (A.quotient() ? " quotient" : "") << "\n";
  return out.str();
}

inline constexpr const char* kPresentationSchema = "thomforge.presentation/1";

inline nlohmann::json terms_to_json(const CdgaPresentation& A, const Element& x) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : x.terms()) {
    nlohmann::json mono = nlohmann::json::object();
    for (std::size_t g = 0; g < A.size(); ++g) {
      if (m[g] > 0) mono[A.generators()[g].name] = m[g];
    }
    terms.push_back({{"coefficient", to_string(c)}, {"monomial", mono}});
  }
  return terms;
}

inline nlohmann::json to_json(const CdgaPresentation& A) {
  nlohmann::json j;
  j["schema"] = kPresentationSchema;
  j["truncate"] = A.truncation();
  j["quotient"] = A.quotient();
  auto& gens = j["generators"] = nlohmann::json::array();
  for (const auto& g : A.generators()) {
    nlohmann::json o{{"name", g.name}, {"degree", g.degree}};
    if (g.weight) o["weight"] = *g.weight;
    if (g.hodge) o["type"] = {g.hodge->p, g.hodge->q};
    gens.push_back(std::move(o));
  }
  auto& d = j["differential"] = nlohmann::json::object();
  for (std::size_t g = 0; g < A.size(); ++g) {
    const Element dg = A.differential_of(g);
    if (!dg.is_zero()) d[A.generators()[g].name] = terms_to_json(A, dg);
  }
  return j;
}

/// Inverse of to_json. Differentials may also be given as expression strings.
inline CdgaPresentation presentation_from_json(const nlohmann::json& j,
                                               std::optional<int> truncation = std::nullopt) {
  try {
    if (j.contains("schema") && j.at("schema") != kPresentationSchema) {
      throw Error(ErrorKind::parse, "unsupported schema " + j.at("schema").dump());
    }
    std::vector<Generator> gens;
    for (const auto& o : j.at("generators")) {
      Generator g;
      g.name = o.at("name").get<std::string>();
      g.degree = o.at("degree").get<int>();
      if (o.contains("weight")) g.weight = o.at("weight").get<int>();
      if (o.contains("type")) g.hodge = HodgeType{o.at("type").at(0).get<int>(), o.at("type").at(1).get<int>()};
      gens.push_back(std::move(g));
    }
    std::optional<int> n = truncation;
    if (!n && j.contains("truncate")) n = j.at("truncate").get<int>();
    if (!n) n = detail::env_truncation();
    if (!n) throw Error(ErrorKind::parse, "no truncation degree given");
    const bool quotient = j.value("quotient", false);
    CdgaPresentation A = CdgaPresentation::make(std::move(gens), *n, quotient);
    std::map<std::string, Element> images;
    if (j.contains("differential")) {
      for (const auto& [name, value] : j.at("differential").items()) {
        if (!A.has_generator(name)) throw Error(ErrorKind::unknown_generator, "d of undeclared generator '" + name + "'");
        if (value.is_string()) {
          images.emplace(name, parse_element(A, value.get<std::string>()));
          continue;
        }
        Element x = A.zero();
        for (const auto& t : value) {
          std::vector<int> e(A.size(), 0);
          for (const auto& [gname, exp] : t.at("monomial").items()) e[A.index_of(gname)] = exp.get<int>();
          x += A.monomial(Monomial(std::move(e)), parse_rational(t.at("coefficient").get<std::string>()));
        }
        images.emplace(name, x);
      }
    }
    return A.with_differentials(images);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::parse, std::string("malformed presentation JSON: ") + e.what());
  }
}

/// Structural equality: generators (with weights and types), differential, truncation.
inline bool identical(const CdgaPresentation& a, const CdgaPresentation& b) {
  if (a.truncation() != b.truncation() || a.quotient() != b.quotient() || a.size() != b.size()) return false;
  for (std::size_t g = 0; g < a.size(); ++g) {
    const auto& x = a.generators()[g];
    const auto& y = b.generators()[g];
    if (x.name != y.name || x.degree != y.degree || x.weight != y.weight || x.hodge != y.hodge) return false;
    if (a.differential_of(g).terms() != b.differential_of(g).terms()) return false;
  }
  return true;
}

}  // namespace thomforge
