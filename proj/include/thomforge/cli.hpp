#pragma once

// Batch front-end. run() parses the arguments, dispatches to one subcommand
// and renders text or JSON. Exit codes: 0 success, 1 bad input, 2 a negative
// mathematical verdict (obstruction, failed validation, empty product).

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "thomforge/thomforge.hpp"

namespace thomforge::cli {

inline constexpr const char* kOutputSchema = "thomforge.output/1";

enum ExitCode : int { success = 0, input_error = 1, negative_verdict = 2 };

struct Options {
  std::string format = "text";
  std::uint64_t seed = 0;
  std::optional<int> up_to;
};

struct Result {
  nlohmann::json json = nlohmann::json::object();
  std::string text;
  int code = success;
};

namespace detail {

inline CdgaPresentation load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::invalid_argument, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::parse, path + ": " + e.what());
    }
    return presentation_from_json(j);
  }
  return make_cdga(text, std::nullopt, path);
}

inline int default_cutoff(const DgAlgebra& A) { return std::min(A.faithful_top(), A.top()); }

/// Negative verdicts as opposed to malformed input.
inline bool is_verdict(ErrorKind k) {
  return k == ErrorKind::d2_nonzero || k == ErrorKind::weight_violation || k == ErrorKind::bigrading_violation ||
         k == ErrorKind::euler_not_pure || k == ErrorKind::undefined_product;
}

inline std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (const auto& p : parts) s += (s.empty() ? "" : sep) + p;
  return s;
}

inline std::string betti_table(const GradedVectorSpaceReport& r) {
  std::ostringstream out;
  out << pad("degree", 8) << pad("dim", 6) << (r.weighted ? pad("weights", 14) : "") << "representatives\n";
  for (const auto& d : r.degrees) {
    std::vector<std::string> w;
    for (const auto& [p, n] : d.weight_dimensions) w.push_back(std::to_string(p) + ":" + std::to_string(n));
    out << pad(std::to_string(d.degree), 8) << pad(std::to_string(d.dimension), 6)
        << (r.weighted ? pad(join(w, ","), 14) : "") << join(d.representatives, ", ") << "\n";
  }
  return out.str();
}

inline nlohmann::json betti_json(const GradedVectorSpaceReport& r) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& d : r.degrees) {
    nlohmann::json o{{"degree", d.degree}, {"dimension", d.dimension}, {"representatives", d.representatives}};
    if (r.weighted) {
      nlohmann::json w = nlohmann::json::object();
      for (const auto& [p, n] : d.weight_dimensions) w[std::to_string(p)] = n;
      o["weights"] = w;
    }
    out.push_back(std::move(o));
  }
  return out;
}

inline nlohmann::json dgl_json(const DglPresentation& D) {
  nlohmann::json gens = nlohmann::json::array(), d = nlohmann::json::object();
  const auto& L = D.algebra();
  for (std::size_t g = 0; g < L.size(); ++g) {
    gens.push_back({{"name", L.generators()[g].name}, {"degree", L.generators()[g].degree}});
    if (!D.differential_of(g).is_zero()) d[L.generators()[g].name] = L.format(D.differential_of(g));
  }
  return {{"generators", gens}, {"differential", d}};
}

inline std::string yes(bool b) { return b ? "yes" : "no"; }

}  // namespace detail

inline Result validate(const std::string& path) {
  Result r;
  const CdgaPresentation A = detail::load(path);
  std::ostringstream out;
  out << "d²=0 OK\n" << "generators: " << A.size() << ", truncation: " << A.truncation()
      << (A.quotient() ? " (quotient)" : "") << "\n";
  r.json["d2"] = "ok";
  r.json["presentation"] = to_json(A);
  if (A.weighted()) {
    out << "weights OK, positive: " << detail::yes(is_positive(A)) << "\n";
    r.json["positive"] = is_positive(A);
  }
  if (A.typed()) {
    const SplitMixedHodgeCdga S(A);
    (void)weights_from_splitting(S);
    out << "Hodge types OK, smooth type: " << detail::yes(S.smooth_type()) << "\n";
    r.json["smooth_type"] = S.smooth_type();
  }
  r.text = out.str();
  return r;
}

inline Result cohomology_command(const std::string& path, const Options& opt) {
  const CdgaPresentation A = detail::load(path);
  const PresentationModel M(A);
  const int up_to = opt.up_to.value_or(detail::default_cutoff(M.algebra()));
  const auto rep = cohomology(M.algebra(), up_to);
  Result r;
  r.text = "cohomology through degree " + std::to_string(up_to) + "\n" + detail::betti_table(rep);
  r.json["up_to"] = up_to;
  r.json["degrees"] = detail::betti_json(rep);
  return r;
}

inline Result thom_command(const std::string& path, const std::string& euler, int rank, const Options& opt) {
  const CdgaPresentation A = detail::load(path);
  const Element e = parse_element(A, euler);
  const ThomModel T(A, e, rank);
  const int up_to = opt.up_to.value_or(detail::default_cutoff(T.algebra()));
  const auto rep = thom_cohomology(T, up_to);
  Result r;
  std::ostringstream out;
  out << "Thom model with e = " << T.euler().to_string() << ", rank " << rank << ", through degree " << up_to << "\n";
  out << detail::betti_table(rep.groups);
  nlohmann::json products = nlohmann::json::array();
  if (!rep.products.empty()) out << "products\n";
  for (const auto& p : rep.products) {
    out << "  " << p.left << " * " << p.right << " = " << p.product << "\n";
    products.push_back({{"left", p.left}, {"right", p.right}, {"product", p.product}});
  }
  r.text = out.str();
  r.json["euler"] = T.euler().to_string();
  r.json["rank"] = rank;
  r.json["up_to"] = up_to;
  r.json["degrees"] = detail::betti_json(rep.groups);
  r.json["products"] = products;
  return r;
}

/// Weights from the presentation, else from Hodge types, else equal to the degree.
inline std::pair<CdgaPresentation, std::string> weighted_input(const CdgaPresentation& A) {
  if (A.weighted()) return {A, "presentation"};
  if (A.typed()) return {weights_from_splitting(SplitMixedHodgeCdga(A)).presentation, "Hodge types"};
  std::map<std::string, int> w;
  for (const auto& g : A.generators()) w.emplace(g.name, g.degree);
  return {attach_weights(A, w).presentation, "degree"};
}

inline Result formality_command(const std::string& path, const Options& opt) {
  const auto [W, source] = weighted_input(detail::load(path));
  const PresentationModel M(W);
  const int up_to = opt.up_to.value_or(detail::default_cutoff(M.algebra()));
  const FormalityResult F = formality_certificate(M.algebra(), up_to);
  Result r;
  std::ostringstream out;
  out << "weights: " << source << "\n";
  r.json["weights"] = source;
  r.json["up_to"] = up_to;
  nlohmann::json obs = nlohmann::json::array();
  for (const auto& o : F.obstructions) {
    out << "obstruction (" << o.degree << "," << o.weight << ") dimension " << o.dimension << "\n";
    obs.push_back({{"degree", o.degree}, {"weight", o.weight}, {"dimension", o.dimension}});
  }
  r.json["obstructions"] = obs;
  if (F.certificate) {
    const auto& c = *F.certificate;
    out << "inclusion tau -> A quasi-isomorphism: " << detail::yes(c.inclusion_report.quasi_iso()) << "\n"
        << "projection tau -> H quasi-isomorphism: " << detail::yes(c.projection_report.quasi_iso()) << "\n"
        << "projection multiplicative: " << detail::yes(c.projection_multiplicative) << "\n";
    r.json["certificate"] = {{"inclusion_quasi_iso", c.inclusion_report.quasi_iso()},
                             {"projection_quasi_iso", c.projection_report.quasi_iso()},
                             {"projection_multiplicative", c.projection_multiplicative}};
  }
  out << (F.formal() ? "formal" : "not formal") << " through degree " << up_to << "\n";
  r.json["formal"] = F.formal();
  r.text = out.str();
  r.code = F.formal() ? success : negative_verdict;
  return r;
}

inline Result minimal_model_command(const std::string& path, const Options& opt) {
  const CdgaPresentation A = detail::load(path);
  const int up_to = opt.up_to.value_or(std::min(A.faithful_top(), A.truncation()));
  const MinimalModel mm = minimal_model(A, up_to);
  Result r;
  std::ostringstream out;
  out << to_text(mm.model) << "# map to the input\n";
  nlohmann::json map = nlohmann::json::object();
  for (std::size_t g = 0; g < mm.model.size(); ++g) {
    const std::string& name = mm.model.generators()[g].name;
    out << "#   " << name << " -> " << mm.map.image(g).to_string() << "\n";
    map[name] = mm.map.image(g).to_string();
  }
  out << "converged: " << detail::yes(mm.converged) << ", decomposable: " << detail::yes(mm.decomposable())
      << ", quasi-isomorphism through degree " << up_to << ": " << detail::yes(mm.report.quasi_iso()) << "\n";
  r.text = out.str();
  r.json["up_to"] = up_to;
  r.json["model"] = to_json(mm.model);
  r.json["map"] = map;
  r.json["converged"] = mm.converged;
  r.json["decomposable"] = mm.decomposable();
  r.json["quasi_iso"] = mm.report.quasi_iso();
  r.json["positive"] = mm.positive;
  r.code = mm.converged && mm.report.quasi_iso() ? success : negative_verdict;
  return r;
}

namespace detail {

inline nlohmann::json massey_json(const MasseyProduct& P) {
  nlohmann::json j{{"degree", P.degree}, {"defined", P.defined}};
  if (!P.defined) {
    j["obstruction"] = P.obstruction;
    return j;
  }
  j["representative"] = P.representative_text();
  j["indeterminacy"] = P.indeterminacy_text();
  j["contains_zero"] = contains_zero(P);
  return j;
}

inline std::string massey_text(const MasseyProduct& P) {
  std::ostringstream out;
  out << "degree: " << P.degree << "\ndefined: " << yes(P.defined) << "\n";
  if (!P.defined) {
    out << "obstruction: " << P.obstruction << "\n";
    return out.str();
  }
  out << "representative: " << P.representative_text() << "\n";
  const auto ind = P.indeterminacy_text();
  out << "indeterminacy: " << (ind.empty() ? "0" : "span(" + join(ind, ", ") + ")") << "\n";
  out << "contains zero: " << yes(contains_zero(P)) << "\n";
  return out.str();
}

}  // namespace detail

inline Result massey_command(const std::string& path, const std::vector<std::string>& classes, bool thom,
                             const std::string& euler, int rank, const Options& opt) {
  if (classes.size() != 3) throw Error(ErrorKind::invalid_argument, "--classes takes exactly three expressions");
  const CdgaPresentation A = detail::load(path);
  const Element x = parse_element(A, classes[0]), y = parse_element(A, classes[1]), z = parse_element(A, classes[2]);
  Result r;
  if (!thom) {
    const PresentationModel M(A);
    const int up_to = opt.up_to.value_or(detail::default_cutoff(M.algebra()));
    const MasseyProduct P = triple_massey(M.algebra(), M.cochain(x), M.cochain(y), M.cochain(z), up_to);
    r.text = detail::massey_text(P);
    r.json["product"] = detail::massey_json(P);
    r.code = P.defined ? success : negative_verdict;
    return r;
  }
  if (euler.empty()) throw Error(ErrorKind::invalid_argument, "--thom needs --euler");
  const Element e = parse_element(A, euler);
  const int up_to = opt.up_to.value_or(detail::default_cutoff(ThomModel(A, e, rank).algebra()));
  const ThomTripleReport R = thom_triple_correspondence(A, e, x, y, z, up_to, rank);
  std::ostringstream out;
  out << "Thom product <w(" << x.to_string() << "), w(" << y.to_string() << "), w(" << z.to_string() << ")>\n"
      << detail::massey_text(R.thom) << "correspondence with e<x, ey, z>: " << detail::yes(R.ok()) << "\n";
  r.text = out.str();
  r.json["product"] = detail::massey_json(R.thom);
  r.json["correspondence"] = {{"defined_agree", R.defined_agree},
                              {"representatives_match", R.representatives_match},
                              {"indeterminacy_match", R.indeterminacy_match},
                              {"zero_agrees", R.zero_agrees},
                              {"variant_match", R.variant_match}};
  r.code = R.thom.defined && R.ok() ? success : negative_verdict;
  return r;
}

inline Result quillen_command(const std::string& path, const std::string& euler, int rank, const Options& opt) {
  const CdgaPresentation H = detail::load(path);
  const FormalQuillenModel q = quillen_model(H);
  const Element e = parse_element(H, euler);
  const ThomQuillenModel T = quillen_thom_model(q.dgl, euler_dual_map(H, e), rank);
  const int up_to = opt.up_to.value_or(T.dgl.algebra().truncation());
  const DglReport rep = validate_dgl(T.dgl, up_to, opt.seed);
  Result r;
  std::ostringstream out;
  out << "# base\n" << q.dgl.to_text() << "# Thom space\n" << T.dgl.to_text();
  out << "d^2 = 0 and Leibniz through degree " << up_to << ": " << detail::yes(rep.valid) << " (" << rep.brackets_checked
      << " brackets)\n";
  for (const auto& f : rep.failures) out << "  " << f << "\n";
  r.text = out.str();
  r.json["base"] = detail::dgl_json(q.dgl);
  r.json["base"]["classes"] = q.classes;
  r.json["thom"] = detail::dgl_json(T.dgl);
  r.json["thom"]["thom_generator"] = T.dgl.algebra().generators()[T.thom_generator].name;
  r.json["validation"] = {{"valid", rep.valid}, {"failures", rep.failures}, {"brackets_checked", rep.brackets_checked},
                          {"seed", opt.seed}};
  r.code = rep.valid ? success : negative_verdict;
  return r;
}

inline Result hodge_thom_command(const std::string& path, const std::string& euler, int k, const Options& opt) {
  const SplitMixedHodgeCdga S(detail::load(path));
  const Element e = parse_element(S.presentation(), euler);
  Result r;
  if (!check_euler_purity(S, e, k)) {
    r.text = "Euler class " + e.to_string() + " is not pure of type (" + std::to_string(k) + "," + std::to_string(k) + ")\n";
    r.json["pure"] = false;
    r.code = negative_verdict;
    return r;
  }
  const FilteredThomModel F = thom_mhs(S, e, k);
  const auto& M = F.model().algebra();
  const int up_to = opt.up_to.value_or(detail::default_cutoff(M));
  const auto T = thom_weights(weights_from_splitting(S).presentation, e, 2 * k);
  bool agree = true;
  std::ostringstream out;
  out << detail::pad("degree", 8) << detail::pad("element", 16) << detail::pad("type", 10) << "weight\n";
  nlohmann::json rows = nlohmann::json::array();
  for (int n = 0; n <= std::min(up_to, M.top()); ++n) {
    for (Index i = 0; i < M.dim(n); ++i) {
      const HodgeType t = F.type(n, i);
      agree = agree && F.weight(n, i) == T.model.algebra().weight(n, i);
      out << detail::pad(std::to_string(n), 8) << detail::pad(M.block(n).labels[i], 16)
          << detail::pad("(" + std::to_string(t.p) + "," + std::to_string(t.q) + ")", 10) << F.weight(n, i) << "\n";
      rows.push_back({{"degree", n}, {"element", M.block(n).labels[i]}, {"type", {t.p, t.q}}, {"weight", F.weight(n, i)}});
    }
  }
  out << "weights agree with the Thom weight decomposition: " << detail::yes(agree) << "\n"
      << "smooth type: " << detail::yes(F.smooth_type()) << "\n";
  r.text = out.str();
  r.json["pure"] = true;
  r.json["chern_rank"] = k;
  r.json["basis"] = rows;
  r.json["weights_agree"] = agree;
  r.json["smooth_type"] = F.smooth_type();
  r.code = agree ? success : negative_verdict;
  return r;
}

/// Entry point shared by the executable and the tests. args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with cdga models of Thom spaces", "thomforge"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--format", opt.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", opt.seed, "seed for randomized validation");
  app.add_option("--up-to", opt.up_to, "degree cutoff");
  app.fallthrough();

  std::string input, euler;
  int rank = 2, chern = 1;
  bool thom = false;
  std::vector<std::string> classes;

  auto* v = app.add_subcommand("validate", "parse and check a presentation");
  v->add_option("--input,input", input, "presentation file");
  auto* c = app.add_subcommand("cohomology", "Betti numbers and representatives");
  c->add_option("--input,input", input, "presentation file")->required();
  auto* t = app.add_subcommand("thom", "cohomology of the Thom model A[e]");
  t->add_option("--base,input", input, "base presentation")->required();
  t->add_option("--euler", euler, "Euler element, e.g. x or u - 2*w")->required();
  t->add_option("--rank", rank, "degree of the Euler element")->capture_default_str();
  auto* f = app.add_subcommand("formality", "weight obstructions and formality certificate");
  f->add_option("--input,input", input, "presentation file")->required();
  auto* m = app.add_subcommand("minimal-model", "Sullivan minimal model through a degree");
  m->add_option("--input,input", input, "presentation file")->required();
  auto* ms = app.add_subcommand("massey", "triple Massey product");
  ms->add_option("--input,input", input, "presentation file")->required();
  ms->add_option("--classes", classes, "three elements")->required()->expected(3);
  ms->add_flag("--thom", thom, "also compare with the Thom model of --euler");
  ms->add_option("--euler", euler, "Euler element for --thom");
  ms->add_option("--rank", rank, "degree of the Euler element")->capture_default_str();
  auto* q = app.add_subcommand("quillen", "Quillen model of the Thom space of a formal base");
  q->add_option("--cohomology,input", input, "cohomology algebra, zero differential")->required();
  q->add_option("--euler", euler, "Euler element, e.g. x or u - 2*w")->required();
  q->add_option("--rank", rank, "degree of the Euler element")->capture_default_str();
  auto* h = app.add_subcommand("hodge-thom", "Tate-twisted Hodge types on the Thom model");
  h->add_option("--input,input", input, "presentation file")->required();
  h->add_option("--euler", euler, "Euler element, e.g. x or u - 2*w")->required();
  h->add_option("--chern-rank", chern, "complex rank k; e has degree 2k")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? success : input_error;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  Result r;
  try {
    if (command == "validate") {
      if (input.empty()) throw Error(ErrorKind::invalid_argument, "validate needs an input file");
      r = validate(input);
    } else if (command == "cohomology") {
      r = cohomology_command(input, opt);
    } else if (command == "thom") {
      r = thom_command(input, euler, rank, opt);
    } else if (command == "formality") {
      r = formality_command(input, opt);
    } else if (command == "minimal-model") {
      r = minimal_model_command(input, opt);
    } else if (command == "massey") {
      r = massey_command(input, classes, thom, euler, rank, opt);
    } else if (command == "quillen") {
      r = quillen_command(input, euler, rank, opt);
    } else {
      r = hodge_thom_command(input, euler, chern, opt);
    }
  } catch (const Error& e) {
    r.code = detail::is_verdict(e.kind()) ? negative_verdict : input_error;
    r.json = {{"error", {{"kind", error_code(e.kind())}, {"message", e.what()}}}};
    r.text.clear();
    err << "error: " << e.what() << "\n";
  }
  if (opt.format == "json") {
    nlohmann::json j{{"schema", kOutputSchema}, {"command", command}, {"exit", r.code}};
    j.update(r.json);
    out << j.dump(2) << "\n";
  } else {
    out << r.text;
  }
  return r.code;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace thomforge::cli
