// One line per acceptance criterion; exit status 0 only when all of them pass.

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

#include "wmf/cache.hpp"
#include "wmf/discform.hpp"
#include "wmf/golden.hpp"
#include "wmf/lvalues.hpp"
#include "wmf/operators.hpp"
#include "wmf/suites.hpp"

using namespace wmf;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  long checked = 0;
  std::vector<std::string> problems;

  void expect(bool ok, const std::string& what) {
    ++checked;
    if (!ok) {
      pass = false;
      if (problems.size() < 5) problems.push_back(what);
    }
  }
  void absorb(const SuiteOutcome& s) {
    checked += s.checked();
    for (const auto& r : s.reports) {
      if (r.failed()) expect(false, s.suite + "/" + s.preset + ": " + r.theorem + " " + r.params.dump());
    }
  }
};

SignVector sv(const QuadCharacter& chi, const char* s) { return parse_sign_vector(chi, s); }

bool divisible(const Rational& v, long d) { return is_integral(v) && v.get_num() % d == 0; }

std::string str(long n) { return std::to_string(n); }

// 1. Reference expansions, digit for digit.
Outcome golden(Workspace& ws) {
  Outcome o;
  SuiteOutcome s = run_golden(ws);
  o.absorb(s);
  o.expect(s.reports.size() == golden_entries().size(), "not every reference entry was compared");
  return o;
}

// 2. Coefficient duality and pairing constant terms across weights 0 and 2.
Outcome duality(Workspace& ws) {
  Outcome o;
  for (const char* name : {"N5", "N8"}) {
    Session& s = ws.session(name);
    const long M = s.preset().find(0, name[1] == '5' ? 9 : 7)->max_pole;
    for (const auto& e : all_sign_vectors(s.chi())) {
      const Grid& a = s.grid(0, e, M);
      const Grid& b = s.grid(2, dual_sign(s.chi(), e), M);
      for (const auto& [m, f] : a.forms) {
        for (const auto& [d, g] : b.forms) {
          const std::string at = std::string(name) + " m=" + str(m) + " d=" + str(d);
          if (-d < f.precision() && -m < g.precision()) {
            o.expect(f.coeff(-d) + g.coeff(-m) == 0, "a_m(-d) + b_d(-m) != 0 at " + at);
          }
          o.expect(pairing_constant_term(f, g, s.chi().modulus()) == 0, "pairing constant term at " + at);
        }
      }
      o.expect(verify_duality(a, b).verdict == "pass", std::string(name) + " verify_duality");
    }
  }
  return o;
}

// 3. T(2) exchanges the two weight 3 cusp forms of level 15; multiplicativity.
Outcome hecke_structure(Workspace& ws) {
  Outcome o;
  Session& s = ws.session("N15");
  const Grid& G1 = s.holomorphic(3, sv(s.chi(), "(1,1)"));
  const Grid& G2 = s.holomorphic(3, sv(s.chi(), "(-1,-1)"));
  const QSeries& g1 = G1.at(1);
  const QSeries& g2 = G2.at(2);
  auto same = [&](const QSeries& x, const QSeries& y, const char* what) {
    const long top = std::min(x.precision(), y.precision());
    o.expect(top > 30, std::string(what) + ": overlap too short");
    for (long n = 0; n < top; ++n) o.expect(x.coeff(n) == y.coeff(n), std::string(what) + " at n=" + str(n));
  };
  same(hecke_T(g1, s.chi(), 3, 2), g2, "g1|T(2) = g2");
  same(hecke_T(g2, s.chi(), 3, 2), g1, "g2|T(2) = g1");
  for (long r : {4L, 19L}) {
    for (long n = 1; r * n < g1.precision(); ++n) {
      if (gcd(n, r) != 1) continue;
      o.expect(g1.coeff(r * n) == g1.coeff(r) * g1.coeff(n), "a(" + str(r) + "n) at n=" + str(n));
    }
    o.expect(hecke_eigen_check(G1, r).verdict == "pass", "eigenform check r=" + str(r));
  }
  return o;
}

// 4. Constant-term divisibility and L-value denominators.
Outcome constant_terms(Workspace& ws) {
  Outcome o;
  Session& s = ws.session("N13");
  for (const auto& e : all_sign_vectors(s.chi())) {
    const Grid& g = s.holomorphic(6, e);
    const QSeries& f0 = g.at(0);
    for (long n = 1; n < f0.precision(); ++n) {
      o.expect(divisible(2 * f0.coeff(n), 13), "13 | 2a_0(" + str(n) + ")");
    }
    o.expect(check_constant_divisibility(g).verdict == "pass", "N13 constant-term report");
  }
  o.expect(l_value_neg(6, KroneckerChar{13}).denominator == 13, "denominator 13 at N=13, k=6");
  o.expect(l_value_neg(2, KroneckerChar{5}).denominator == 5, "denominator 5 at N=5, k=2");
  o.expect(l_value_neg(2, KroneckerChar{-15}).denominator == 1, "denominator 1 at N=15, k=2");
  return o;
}

// 5. Hecke divisibility and the level 15 negative control.
Outcome hecke_divisibility(Workspace& ws) {
  Outcome o;
  auto scan = [&](const Grid& g, long m, long d, long coprime_to) {
    if (!g.has(m)) {
      o.expect(false, "missing f_" + str(m));
      return;
    }
    const long sm = s_factor(m, g.chi.modulus());
    const QSeries& f = g.at(m);
    long seen = 0;
    for (long n = 1; n < f.precision(); ++n) {
      if (n % coprime_to == 0) continue;
      o.expect(divisible(sm * f.coeff(n), d), str(d) + " | s(m)a_" + str(m) + "(" + str(n) + ")");
      ++seen;
    }
    o.expect(seen > 20, "window too short for f_" + str(m));
  };
  Session& s8 = ws.session("N8");
  const Grid& b = s8.grid(0, sv(s8.chi(), "+1"), 7);
  scan(b, -6, 3, 3);
  scan(b, -7, 7, 7);
  Session& s5 = ws.session("N5");
  const Grid& a = s5.grid(0, sv(s5.chi(), "+1"), 9);
  scan(a, -4, 4, 2);
  scan(a, -5, 5, 5);
  for (const auto& e : all_sign_vectors(s8.chi())) {
    const Grid& src = s8.grid(0, e, 7);
    const Grid& tgt = s8.grid(0, sign_image(s8.chi(), e, 3), 7);
    o.expect(!check_hecke_divisibility(src, tgt, 3, s8.dual_lookup(0)).failed(), "N8 r=3 report");
  }

  Session& s15 = ws.session("N15");
  const SignVector e4 = sv(s15.chi(), "(1,1)");
  o.expect(sign_label(s15.chi(), e4) == "eps4", "(1,1) is labelled eps4");
  const Grid& tgt = s15.grid(-1, e4, 11);
  const Grid& src = s15.grid(-1, sign_image(s15.chi(), e4, 11), 11);
  Report r = check_hecke_divisibility(src, tgt, 11, s15.dual_lookup(-1));
  o.expect(r.verdict == "not-applicable", "N15 r=11 must be not-applicable, got " + r.verdict);
  bool named = false;
  for (const auto& h : r.hypotheses) named |= !h.holds && h.dimension > 0 && !h.space.empty();
  o.expect(named, "a nonvanishing cusp space is named");
  o.expect(tgt.has(-11) && tgt.at(-11).coeff(1) == -47, "coefficient -47 at q");
  o.expect(!divisible(Rational(-47), 11), "-47 is indivisible by 11");
  bool noted = false;
  for (const auto& n : r.notes) noted |= n.find("= -47 ") != std::string::npos;
  o.expect(noted, "the -47 coefficient is recorded in the report");
  return o;
}

// 6. Weights of the automorphic products.
Outcome borcherds(Workspace& ws) {
  Outcome o;
  Session& s = ws.session("N5");
  const Grid& g = s.grid(0, sv(s.chi(), "+1"), 9);
  const std::vector<std::pair<long, long>> want{{-1, 5}, {-4, 15}, {-5, 15}};
  for (auto [m, w] : want) {
    BorcherdsResult b = borcherds_weight(g, m);
    o.expect(b.weight && *b.weight == w, "weight of f_" + str(m));
    o.expect(b.weight && divisible(*b.weight, 5), "weight of f_" + str(m) + " divisible by 5");
  }
  return o;
}

// 7. D f_{-5} = (-5) g_{-5} at level 5.
Outcome differential(Workspace& ws) {
  Outcome o;
  Session& s = ws.session("N5");
  const SignVector e = sv(s.chi(), "+1");
  const QSeries df = differential_power(s.grid(0, e, 9).at(-5), 0);
  const QSeries& g = s.grid(2, e, 9).at(-5);
  const long top = std::min(df.precision(), g.precision());
  o.expect(top > 30, "window too short");
  for (long n = -5; n < top; ++n) o.expect(df.coeff(n) == -5 * g.coeff(n), "coefficient " + str(n));
  return o;
}

// 8. Discriminant forms and Weil representations.
Outcome discriminant_forms() {
  Outcome o;
  bool two_choices = false;
  for (long N : {5L, 8L, 13L, 15L}) {
    const QuadCharacter chi = load_preset("N" + str(N)).chi;
    for (const auto& e : all_sign_vectors(chi)) {
      const auto opts = eight_adic_options(chi, e);
      if (N % 8 == 0 && opts.empty()) continue;  // no Jordan block for this sign
      const DiscriminantForm D = build_discform(chi, e);
      for (const auto& X : {D, dual_discform(D)}) {
        const WeilCheck w = check_weil(X);
        const std::string at = "N=" + str(N) + " " + X.description;
        o.expect(w.milgram, "Milgram " + at);
        o.expect(w.s_fourth_identity, "S^4 " + at);
        o.expect(w.braid, "(ST)^3 = S^2 " + at);
        o.expect(w.unitary, "unitary " + at);
      }
      if (opts.size() >= 2) two_choices = true;
      for (auto t : opts) {
        const DiscriminantForm Dt = build_discform(chi, e, t);
        o.expect(q_values(Dt) == q_values(D), "Q multiset for 2-adic choice");
        o.expect(signature(Dt) == signature(D), "signature for 2-adic choice");
      }
    }
  }
  o.expect(two_choices, "some sign vector admits two 2-adic choices");
  return o;
}

// 9. Property suites: ring laws, grid invariants, stability, cache round trip.
Outcome properties(Workspace& ws, const fs::path& scratch) {
  Outcome o;
  std::mt19937_64 rng(2024);
  auto rnd = [&](long lo, long prec) {
    QSeries f(prec);
    for (long n = lo; n < prec; ++n) {
      long c = static_cast<long>(rng() % 9) - 4;
      if (c) f.set(n, make_rational(c, 1 + static_cast<long>(rng() % 4)));
    }
    return f;
  };
  for (int t = 0; t < 30; ++t) {
    QSeries a = rnd(-4, 20), b = rnd(-1, 18), c = rnd(0, 25);
    o.expect(((a + b) + c).agrees_with(a + (b + c)), "addition is associative");
    o.expect((a * b).agrees_with(b * a), "multiplication commutes");
    o.expect(((a * b) * c).agrees_with(a * (b * c)), "multiplication is associative");
    o.expect((a * (b + c)).agrees_with(a * b + a * c), "distributive law");
  }
  for (const auto& name : preset_names()) {
    Session& s = ws.session(name);
    o.absorb(run_invariants(s, 50));
    o.absorb(run_cache_roundtrip(s, scratch / name));
    for (const auto& pg : s.preset().grids) {
      const Grid& g = s.grid(pg.weight, pg.eps.front(), pg.max_pole);
      o.expect(grid_to_json(g).dump() == grid_to_json(s.compute(g.k, g.eps, g.max_pole, g.precision)).dump(),
               "deterministic JSON for " + name);
    }
  }
  return o;
}

// 10. s(m) f_m integral on every grid behind the reference tables.
Outcome integrality(Workspace& ws) {
  Outcome o;
  std::set<std::string> seen;
  for (const auto& e : golden_entries()) {
    Session& s = ws.session(e.preset);
    const Grid& g = s.grid(e.k, parse_sign_vector(s.chi(), e.eps), e.max_pole);
    const std::string key = e.preset + " k=" + str(e.k) + " " + sign_vector_string(g.eps);
    if (!seen.insert(key).second) continue;
    PropertyResult r = integrality_check(g);
    o.checked += r.checked;
    std::string first;
    if (!r.witnesses.empty()) {
      const Witness& w = r.witnesses.front();
      first = " m=" + str(w.m) + " n=" + str(w.n) + " value=" + to_string(w.value);
    }
    o.expect(r.pass, "integrality " + key + first);
  }
  return o;
}

}  // namespace

int main() {
  const fs::path scratch = fs::temp_directory_path() / ("wmf-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(scratch);
  fs::create_directories(scratch);
  Workspace ws;

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"golden tables", [&] { return golden(ws); }},
      {"coefficient duality", [&] { return duality(ws); }},
      {"Hecke structure at level 15", [&] { return hecke_structure(ws); }},
      {"constant-term divisibility", [&] { return constant_terms(ws); }},
      {"Hecke divisibility", [&] { return hecke_divisibility(ws); }},
      {"Borcherds weights", [&] { return borcherds(ws); }},
      {"differential operator mechanism", [&] { return differential(ws); }},
      {"discriminant forms", [&] { return discriminant_forms(); }},
      {"property suites", [&] { return properties(ws, scratch); }},
      {"integrality audit", [&] { return integrality(ws); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& ex) {
      o.pass = false;
      o.problems.push_back(std::string("exception: ") + ex.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2zu %-34s %s  (%ld checks, %.1fs)\n", i + 1, criteria[i].first.c_str(),
                o.pass ? "PASS" : "FAIL", o.checked, secs);
    for (const auto& p : o.problems) std::printf("    %s\n", p.c_str());
    failed += !o.pass;
  }
  fs::remove_all(scratch);
  return failed == 0 ? 0 : 1;
}
