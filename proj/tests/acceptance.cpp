// Acceptance run: one PASS/FAIL line per criterion with its wall time.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>

#include "oracles/lie_oracle.hpp"
#include "oracles/massey_oracle.hpp"
#include "support.hpp"
#include "thomforge/cli.hpp"

using namespace thomforge;

namespace {

struct Check {
  std::vector<std::string> failures;
  std::size_t count = 0;
  void expect(bool ok, const std::string& what) {
    ++count;
    if (!ok && failures.size() < 4) failures.push_back(what);
  }
  std::string verdict() const {
    std::string s;
    for (const auto& f : failures) s += (s.empty() ? "" : "; ") + f;
    return s;
  }
};

int faithful(const CdgaPresentation& A) { return A.quotient() ? A.truncation() : A.truncation() - 1; }

/// Closed weight-homogeneous elements of degree n: zero, a kernel basis per
/// weight block, and one random cocycle plus boundary per block.
std::vector<Element> closed_elements(const CdgaPresentation& A, int n, std::mt19937_64& rng) {
  std::vector<Element> out{A.zero()};
  const PresentationModel M(A);
  const DgAlgebra& alg = M.algebra();
  std::map<int, std::vector<Index>> blocks;
  for (Index i = 0; i < alg.dim(n); ++i) blocks[alg.weighted() ? alg.weight(n, i) : 0].push_back(i);
  std::uniform_int_distribution<int> coeff(-2, 2);
  for (const auto& [w, idx] : blocks) {
    std::vector<SparseVector> cols;
    for (Index i : idx) cols.push_back(alg.block(n).differential[i]);
    Element combo = A.zero();
    for (const auto& k : kernel_basis(cols)) {
      const Element z = M.element({n, k.select([](Index) { return true; }, [&](Index t) { return idx[t]; })});
      out.push_back(z);
      combo += Rational(coeff(rng)) * z;
    }
    for (const auto& m : basis(A, n - 1)) {
      if (!A.weighted() || A.weight(m) == w) combo += differentiate_truncated(A.monomial(m, coeff(rng)));
    }
    if (!combo.is_zero()) out.push_back(combo);
  }
  return out;
}

Check kernel_laws() {
  Check c;
  std::mt19937_64 rng(1);
  for (const auto& name : support::all_fixtures()) {
    const auto A = support::fixture(name);
    const auto N = support::to_naive(A);
    std::uniform_int_distribution<int> deg(0, std::min(8, A.truncation()));
    for (int t = 0; t < 500; ++t) {
      const int p = deg(rng), q = deg(rng), r = deg(rng);
      const auto a = support::random_element(A, p, rng), b = support::random_element(A, q, rng),
                 z = support::random_element(A, r, rng);
      const auto da = differentiate_truncated(a), db = differentiate_truncated(b);
      c.expect((a * b) * z == a * (b * z), name + " associativity");
      c.expect(a * b == Rational(parity_sign(p * q)) * (b * a), name + " graded commutativity");
      c.expect(differentiate_truncated(a * b) == da * b + Rational(parity_sign(p)) * (a * db), name + " Leibniz");
      c.expect(differentiate_truncated(da).is_zero(), name + " d^2");
      c.expect(support::to_poly(a * b) == N.mul(support::to_poly(a), support::to_poly(b)), name + " product vs oracle");
      c.expect(support::to_poly(da) == N.diff(support::to_poly(a)), name + " d vs oracle");
    }
  }
  return c;
}

Check thom_isomorphism() {
  Check c;
  std::mt19937_64 rng(2);
  for (const auto& name : support::all_fixtures()) {
    const auto A = support::fixture(name);
    const auto N = support::to_naive(A);
    const int top = faithful(A);
    std::vector<std::size_t> betti, dims;
    for (int k = 0; k <= top; ++k) {
      betti.push_back(oracle::betti(N, k));
      dims.push_back(N.basis(k).size());
    }
    for (int n : {2, 4}) {
      if (n > A.truncation()) continue;
      for (const auto& e : closed_elements(A, n, rng)) {
        const ThomModel T(A, e, n);
        const Cohomology H(T.algebra(), top + n);
        for (int k = 0; k <= top + n; ++k) {
          const std::size_t want_dim = k >= n ? dims[k - n] : 0, want_h = k >= n ? betti[k - n] : 0;
          c.expect(T.algebra().dim(k) == want_dim, name + " e=" + e.to_string() + " dim A[e]^" + std::to_string(k));
          c.expect(H.dim(k) == want_h, name + " e=" + e.to_string() + " H^" + std::to_string(k));
        }
      }
    }
  }
  return c;
}

Check cp_reproduction() {
  Check c;
  const auto A = support::fixture("cpN.cdga");
  const Element x = A.generator("x");
  const ThomModel T(A, x, 2);
  const Cohomology H(T.algebra(), 8);
  // Λ(x_2, y_9; dy = x^5), built directly
  oracle::NaiveCdga C;
  C.degrees = {2, 9};
  C.truncation = 12;
  C.d = {{}, {{oracle::Word{0, 0, 0, 0, 0}, 1}}};
  for (int k = 1; k <= 8; ++k) c.expect(H.dim(k) == oracle::betti(C, k), "H^" + std::to_string(k));
  auto xp = [&](int i) {
    Element r = A.one();
    for (int p = 0; p < i; ++p) r = r * x;
    return r;
  };
  auto X = [&](int m) { return oracle::Poly{{oracle::Word(static_cast<std::size_t>(m), 0), 1}}; };
  for (int i = 0; 2 * i + 2 <= 8; ++i) {
    const bool thom_nonzero = !H.coordinates(T.cochain(T.w(xp(i)))).empty();
    c.expect(thom_nonzero == !oracle::is_exact(C, X(i + 1), 2 * i + 2), "class of w(x^" + std::to_string(i) + ")");
    for (int j = i; 2 * i + 2 * j + 4 <= 8; ++j) {
      c.expect(T.multiply(T.w(xp(i)), T.w(xp(j))) == T.w(xp(i + j + 1)), "w(x^i) w(x^j)");
      c.expect(C.mul(X(i + 1), X(j + 1)) == X(i + j + 2), "oracle product");
    }
  }
  return c;
}

Check formality_transfer() {
  Check c;
  for (const auto& name : support::all_fixtures()) {
    const auto A = support::fixture(name);
    if (!A.has_zero_differential() || !A.weighted()) continue;
    std::vector<Element> es{A.zero()};
    for (const auto& m : basis(A, 2)) {
      if (A.weight(m) == 2) es.push_back(A.monomial(m));
    }
    for (const auto& e : es) {
      const auto T = thom_weights(A, e, 2, 2);
      const auto& M = T.model.algebra();
      const auto F = formality_certificate(M, std::min(M.faithful_top(), M.top()));
      c.expect(F.formal(), name + " e=" + e.to_string());
    }
  }
  return c;
}

Check nonformal_witness() {
  Check c;
  const auto A = support::fixture("massey-thom.cdga");
  const Element x = A.generator("x"), y = A.generator("y"), t = A.generator("t");
  const auto P = triple_massey(A, x, t * x, y, 9);
  c.expect(P.defined, "<x, tx, y> defined");
  if (P.defined) {
    c.expect(!P.representative_class.empty(), "<x, tx, y> nonzero");
    c.expect(!contains_zero(P), "<x, tx, y> avoids zero");
    const auto N = support::to_naive(A);
    const auto reps = oracle::triple_representatives(N, support::to_poly(x), 2, support::to_poly(t * x), 4,
                                                      support::to_poly(y), 2);
    c.expect(!reps.empty(), "oracle finds representatives");
    for (const auto& r : reps) c.expect(!oracle::is_exact(N, r, 7), "oracle representative exact");
  }
  const auto R = thom_triple_correspondence(A, t, x, x, y, 11);
  c.expect(R.thom.defined && !R.thom.representative_class.empty() && !R.thom_contains_zero, "<w_x, w_x, w_y> nonzero");
  c.expect(R.ok(), "correspondence");
  const auto W = thom_weights(A, t, 2);
  const auto F = formality_certificate(W.model.algebra(), 11);
  c.expect(!F.formal() && !F.obstructions.empty(), "Thom model obstructed");
  return c;
}

Check purity_formality() {
  Check c;
  const PresentationModel cp2(support::fixture("cp2.cdga"));
  const auto F = formality_certificate(cp2.algebra(), 8);
  c.expect(F.formal(), "CP2 certificate");
  if (F.certificate) {
    c.expect(F.certificate->inclusion_report.quasi_iso() && F.certificate->inclusion_report.degrees.size() >= 9,
             "inclusion through degree 8");
    c.expect(F.certificate->projection_report.quasi_iso() && F.certificate->projection_report.degrees.size() >= 9,
             "projection through degree 8");
  }
  const PresentationModel mt(support::fixture("massey-thom.cdga"));
  const auto G = formality_certificate(mt.algebra(), 9);
  c.expect(!G.formal() && !G.obstructions.empty() && G.obstructions.front().degree == 5 &&
               G.obstructions.front().weight == 6,
           "obstruction at (5,6)");
  return c;
}

Check minimal_models() {
  Check c;
  const auto H = support::fixture("cp2-cohomology.cdga");
  const auto mm = minimal_model(H, 6);
  std::vector<int> degrees;
  for (const auto& g : mm.model.generators()) degrees.push_back(g.degree);
  c.expect(degrees == std::vector<int>{2, 5}, "generators in degrees 2 and 5");
  c.expect(mm.decomposable(), "decomposable");
  c.expect(mm.converged && mm.report.quasi_iso() && is_quasi_iso(mm.map, 6).quasi_iso(), "quasi-isomorphism");
  for (const auto& name : support::all_fixtures()) {
    const auto A = support::fixture(name);
    if (!A.weighted() || !is_positive(A)) continue;
    const auto N = support::to_naive(A);
    if (oracle::betti(N, 1) != 0) continue;
    const int up_to = std::min(6, faithful(A));
    const auto M = minimal_model(A, up_to);
    c.expect(M.positive, name + " positive weights");
    c.expect(M.decomposable() && M.report.quasi_iso(), name + " minimal model");
    const auto NM = support::to_naive(M.model);
    for (int k = 0; k <= up_to; ++k) c.expect(oracle::betti(NM, k) == oracle::betti(N, k), name + " betti vs oracle");
  }
  return c;
}

Check massey_bookkeeping() {
  Check c;
  for (auto v : {SVariant::first, SVariant::second}) {
    std::function<int(int, int)> rec = [&](int i, int j) {
      const int diagonal = -(v == SVariant::first ? i % 2 : 1 - i % 2);
      return i == j ? diagonal : diagonal + rec(i + 1, j) + 1;
    };
    for (int j = 1; j <= 12; ++j) {
      for (int i = 1; i <= j; ++i) {
        c.expect(s_exponent(i, j, v) == rec(i, j), "s matches recursion");
        for (int l = i; l < j; ++l) {
          c.expect(s_exponent(i, j, v) == s_exponent(i, l, v) + s_exponent(l + 1, j, v) + 1, "s additivity");
        }
      }
    }
    const auto A = support::fixture("massey4.cdga");
    const Element t = A.generator("t");
    const ThomModel T(A, t, 2);
    const PresentationModel& M = T.base_model();
    std::vector<Cochain> xs, ys, wx;
    const std::vector<std::string> names{"x", "x", "y", "y"};
    for (std::size_t i = 0; i < names.size(); ++i) {
      Element xi = A.generator(names[i]), yi = xi;
      for (int p = 0; p < euler_power(static_cast<int>(i) + 1, v); ++p) yi = t * yi;
      xs.push_back(M.cochain(xi));
      ys.push_back(M.cochain(yi));
      wx.push_back({xs.back().degree + 2, xs.back().vector});
    }
    const auto sys = build_massey_system(M.algebra(), ys);
    c.expect(sys.system.has_value(), "base system for k = 4");
    if (!sys.system) continue;
    const auto lifted = lift_massey_system(T, xs, *sys.system, v);
    c.expect(!validate_massey_system(T.algebra(), lifted, wx).has_value(), "lifted system validates");
    const Cochain e = M.cochain(t, 2);
    for (const auto& [ij, m] : sys.system->m) {
      if (ij.first == ij.second) continue;
      Cochain em = m;
      for (int p = 0; p <= s_exponent(ij.first, ij.second, v); ++p) em = M.algebra().multiply(e, em);
      c.expect(thom_pullback(T, lifted.m.at(ij)) == em, "pullback is multiplication by e");
    }
  }
  return c;
}

Check quillen_corollary() {
  Check c;
  std::mt19937_64 rng(9);
  auto check_dsquared = [&](const DglPresentation& D, const std::string& what) {
    std::vector<int> degrees;
    std::vector<oracle::TensorPoly> d;
    for (std::size_t g = 0; g < D.algebra().size(); ++g) {
      degrees.push_back(D.algebra().generators()[g].degree);
      d.push_back(D.differential_of(g).terms());
    }
    for (std::size_t g = 0; g < d.size(); ++g) c.expect(oracle::d_squared(degrees, d, g).empty(), what + " d^2");
  };
  std::uniform_int_distribution<int> count(1, 2), deg(2, 4), top(4, 7), rank(0, 1);
  int produced = 0;
  while (produced < 100) {
    std::string text;
    const int k = count(rng);
    for (int g = 0; g < k; ++g) text += "gen g" + std::to_string(g) + " : " + std::to_string(deg(rng)) + "\n";
    text += "truncate " + std::to_string(top(rng)) + " quotient\n";
    const auto H = make_cdga(text);
    std::size_t reduced = 0;
    for (int n = 1; n <= H.truncation(); ++n) reduced += basis(H, n).size();
    const int n = rank(rng) ? 4 : 2;
    if (reduced > 4 || reduced == 0 || basis(H, n).empty()) continue;
    const Element e = support::random_element(H, n, rng);
    if (e.is_zero()) continue;
    ++produced;
    const auto q = quillen_model(H);
    c.expect(q.dgl.is_quadratic() && q.dgl.is_order_preserving(), "input shape");
    const auto T = quillen_thom_model(q.dgl, euler_dual_map(H, e), n);
    c.expect(T.dgl.is_quadratic() && T.dgl.is_order_preserving(), "output shape");
    check_dsquared(T.dgl, text);
    c.expect(validate_dgl(T.dgl, T.dgl.algebra().truncation(), static_cast<std::uint64_t>(produced), 16).valid, "Leibniz");
  }
  const auto H = support::fixture("cp2-cohomology.cdga");
  const auto phi = euler_dual_map(H, H.generator("x"));
  c.expect(phi.columns.size() == 2 && phi.columns[0].empty() && phi.columns[1] == SparseVector::unit(0),
           "phi(v1) = 0 and phi(v3) = v1");
  const auto T = quillen_thom_model(quillen_model(H).dgl, phi, 2);
  for (std::size_t g = 0; g < T.dgl.algebra().size(); ++g) c.expect(T.dgl.differential_of(g).is_zero(), "CP2 d = 0");
  return c;
}

Check hodge_consistency() {
  Check c;
  struct Case {
    std::string fixture, euler;
    int k;
  };
  for (const auto& [name, euler, k] : std::vector<Case>{{"cp2-hodge.cdga", "x", 1},
                                                         {"cp2-hodge.cdga", "x^2", 2},
                                                         {"mixed-hodge.cdga", "x", 1},
                                                         {"mixed-hodge.cdga", "-3*x", 1},
                                                         {"mixed-hodge.cdga", "x^2", 2}}) {
    const SplitMixedHodgeCdga S(support::fixture(name));
    const Element e = parse_element(S.presentation(), euler);
    c.expect(check_euler_purity(S, e, k), name + " " + euler + " pure");
    const auto F = thom_mhs(S, e, k);
    const auto W = thom_weights(weights_from_splitting(S).presentation, e, 2 * k);
    const auto& M = W.model.algebra();
    const auto& gens = S.presentation().generators();
    for (int n = 0; n <= M.top(); ++n) {
      for (Index i = 0; i < M.dim(n); ++i) {
        c.expect(F.weight(n, i) == M.weight(n, i), name + " " + euler + " weights");
        // p + q of the base monomial, plus 2k
        const Monomial& m = F.model().base_model().basis(n - 2 * k)[i];
        int expected = 2 * k;
        for (std::size_t g = 0; g < gens.size(); ++g) expected += m[g] * (gens[g].hodge->p + gens[g].hodge->q);
        c.expect(F.weight(n, i) == expected, name + " " + euler + " Tate twist");
      }
    }
  }
  const SplitMixedHodgeCdga S(support::fixture("mixed-hodge.cdga"));
  for (const char* euler : {"z", "x + z"}) {
    const Element e = parse_element(S.presentation(), euler);
    c.expect(!check_euler_purity(S, e, 1), std::string(euler) + " rejected");
    bool gated = false;
    try {
      (void)thom_mhs(S, e, 1);
    } catch (const Error& err) {
      gated = err.kind() == ErrorKind::euler_not_pure;
    }
    c.expect(gated, std::string(euler) + " euler_not_pure");
  }
  return c;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char ch : s) out += ch == '\'' ? std::string("'\\''") : std::string(1, ch);
  return out + "'";
}

std::pair<int, std::string> run_process(const std::vector<std::string>& args) {
  std::string cmd = shell_quote(THOMFORGE_CLI);
  for (const auto& a : args) cmd += " " + shell_quote(a);
  cmd += " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Check cli_determinism() {
  Check c;
  auto fx = [](const std::string& n) { return support::fixture_path(n); };
  std::vector<std::vector<std::string>> runs;
  for (const auto& name : support::all_fixtures()) {
    for (const char* cmd : {"validate", "cohomology", "formality"}) runs.push_back({cmd, fx(name)});
    runs.push_back({"thom", "--base", fx(name), "--euler", "0", "--rank", "2"});
  }
  for (const char* name : {"cp2.cdga", "cpN.cdga", "massey-fixture.cdga", "cp3-cohomology.cdga"}) {
    runs.push_back({"minimal-model", fx(name), "--up-to", "6"});
  }
  runs.push_back({"thom", "--base", fx("cpN.cdga"), "--euler", "x", "--rank", "2"});
  runs.push_back({"massey", fx("massey-fixture.cdga"), "--classes", "x", "x", "y"});
  runs.push_back({"massey", fx("heisenberg.cdga"), "--classes", "a", "b", "b"});
  runs.push_back({"massey", fx("massey-thom.cdga"), "--classes", "x", "x", "y", "--thom", "--euler", "t", "--rank", "2"});
  for (const char* name : {"cp2-cohomology.cdga", "cp3-cohomology.cdga", "s2xs2.cdga"}) {
    runs.push_back({"quillen", "--cohomology", fx(name), "--euler", "0", "--rank", "2"});
  }
  runs.push_back({"quillen", "--cohomology", fx("s2xs2.cdga"), "--euler", "u + 2*w", "--rank", "2"});
  runs.push_back({"hodge-thom", fx("cp2-hodge.cdga"), "--euler", "x", "--chern-rank", "1"});
  runs.push_back({"hodge-thom", fx("mixed-hodge.cdga"), "--euler", "x", "--chern-rank", "1"});
  runs.push_back({"hodge-thom", fx("mixed-hodge.cdga"), "--euler", "z", "--chern-rank", "1"});
  std::set<std::string> commands;
  for (auto args : runs) {
    args.insert(args.end(), {"--seed", "7"});
    for (const char* format : {"text", "json"}) {
      auto full = args;
      full.insert(full.end(), {"--format", format});
      const auto a = run_process(full), b = run_process(full);
      const std::string what = full[0] + " " + full[1] + " " + format;
      c.expect(a.first >= 0 && a.first <= 2, what + " exit code " + std::to_string(a.first));
      c.expect(a == b, what + " differs between runs");
      c.expect(!a.second.empty(), what + " printed nothing");
      if (a.first == 0 || a.first == 2) commands.insert(full[0]);
    }
  }
  c.expect(commands.size() == 8, "all eight subcommands produced results");
  return c;
}

struct Criterion {
  int id;
  std::string name;
  double budget;  // seconds, 0 when unbounded
  std::function<Check()> check;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "kernel laws", 10, kernel_laws},
      {2, "Thom isomorphism", 5, thom_isomorphism},
      {3, "CP reproduction", 0, cp_reproduction},
      {4, "formality transfer", 5, formality_transfer},
      {5, "non-formal Thom witness", 30, nonformal_witness},
      {6, "purity implies formality", 10, purity_formality},
      {7, "minimal model", 60, minimal_models},
      {8, "Massey bookkeeping", 5, massey_bookkeeping},
      {9, "Quillen model of the Thom space", 30, quillen_corollary},
      {10, "Hodge consistency", 5, hodge_consistency},
      {11, "CLI determinism", 0, cli_determinism},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    std::size_t checks = 0;
    try {
      const Check c = cr.check();
      detail = c.verdict();
      checks = c.count;
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (detail.empty() && cr.budget > 0 && secs > cr.budget) detail = "over the time budget";
    failed += !detail.empty();
    std::printf("%s %2d %s (%zu checks, %.2f s%s)%s%s\n", detail.empty() ? "PASS" : "FAIL", cr.id, cr.name.c_str(), checks, secs,
                cr.budget > 0 ? (", budget " + std::to_string(static_cast<int>(cr.budget)) + " s").c_str() : "",
                detail.empty() ? "" : ": ", detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
