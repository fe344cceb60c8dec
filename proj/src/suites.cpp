#include "wmf/suites.hpp"

#include <fstream>
#include <sstream>

#include "wmf/discform.hpp"
#include "wmf/golden.hpp"
#include "wmf/operators.hpp"

namespace wmf {

namespace fs = std::filesystem;

bool SuiteOutcome::passed() const { return failures() == 0; }

long SuiteOutcome::failures() const {
  long n = 0;
  for (const auto& r : reports) n += r.failed();
  return n;
}

long SuiteOutcome::checked() const {
  long n = 0;
  for (const auto& r : reports) n += r.checked;
  return n;
}

nlohmann::json SuiteOutcome::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["preset"] = preset;
  j["passed"] = passed();
  j["failures"] = failures();
  j["checked"] = checked();
  j["reports"] = nlohmann::json::array();
  for (const auto& r : reports) j["reports"].push_back(r.to_json());
  return j;
}

Workspace::Workspace(std::optional<fs::path> cache_dir, bool verify_checksums)
    : cache_dir_(std::move(cache_dir)), verify_(verify_checksums) {}

Session& Workspace::session(const std::string& preset) {
  auto& slot = sessions_[preset];
  if (!slot) slot = std::make_unique<Session>(load_preset(preset), cache_dir_, verify_);
  return *slot;
}

Report property_report(const std::string& name, const Grid& g, const PropertyResult& r) {
  Report rep;
  rep.theorem = name;
  rep.params = grid_params(g);
  rep.checked = r.checked;
  for (const auto& w : r.witnesses) rep.fail(w.m, w.n, w.value, w.note);
  if (!r.pass && rep.verdict != "fail") rep.fail(0, 0, 0, name + " failed");
  return rep;
}

namespace {

// Every (weight, max_pole, eps) triple a preset lists.
struct GridRef {
  int k;
  long max_pole;
  SignVector eps;
};

std::vector<GridRef> preset_grids(const Preset& p) {
  std::vector<GridRef> out;
  for (const auto& pg : p.grids) {
    for (const auto& e : pg.eps) out.push_back({pg.weight, pg.max_pole, e});
  }
  return out;
}

Report not_applicable(const std::string& theorem, nlohmann::json params, const std::string& why) {
  Report r;
  r.theorem = theorem;
  r.params = std::move(params);
  r.verdict = "not-applicable";
  r.notes.push_back(why);
  return r;
}

// Pairing of the vector-valued lifts vanishes for every pair and no
// coefficient falls outside the residues the discriminant form attains.
Report lift_pairings(const Grid& F, const Grid& G) {
  Report rep;
  rep.theorem = "lifted-pairing";
  rep.params = grid_params(F);
  rep.params["dual_k"] = G.k;
  DiscriminantForm D;
  try {
    D = build_discform(F.chi, F.eps);
  } catch (const std::invalid_argument& e) {
    return not_applicable("lifted-pairing", rep.params, e.what());
  }
  const DiscriminantForm Dd = dual_discform(D);
  rep.params["discriminant_form"] = D.description;
  std::map<long, VectorForm> lf, lg;
  for (const auto& [m, f] : F.forms) lf.emplace(m, lift(f, F.chi, D));
  for (const auto& [d, g] : G.forms) lg.emplace(d, lift(g, G.chi, Dd));
  for (const auto& [m, v] : lf) {
    if (!v.stray_exponents.empty()) rep.fail(m, v.stray_exponents.front(), 0, "exponent outside the attained residues");
  }
  for (const auto& [d, v] : lg) {
    if (!v.stray_exponents.empty()) rep.fail(d, v.stray_exponents.front(), 0, "exponent outside the attained residues");
  }
  long skipped = 0;
  for (const auto& [m, Fm] : lf) {
    for (const auto& [d, Gd] : lg) {
      try {
        Rational c = lift_pairing_constant_term(Fm, Gd);
        ++rep.checked;
        if (c != 0) rep.fail(m, d, c, "constant term of the lifted pairing != 0");
      } catch (const std::invalid_argument&) {
        ++skipped;
      }
    }
  }
  if (skipped) rep.notes.push_back(std::to_string(skipped) + " pairs lie outside the known precision");
  return rep;
}

// f | T(r) lies in the target eps' grid: rebuild it from the pivots and
// compare every known coefficient.
Report hecke_membership(Session& s, const Grid& g, long m, long r) {
  const QuadCharacter& chi = g.chi;
  const Grid& target = s.grid(g.k, sign_image(chi, g.eps, r), 0);
  const QSeries img = hecke_T(g.at(m), chi, g.k, r);
  QSeries expected(img.precision());
  for (const auto& [t, ft] : target.forms) {
    if (t >= img.precision()) continue;
    const Rational c = img.coeff(t) * s_factor(t, chi.modulus());
    if (c != 0) expected = expected + ft * c;
  }
  Report rep = hecke_image_check(g.at(m), g, r, expected, "T(" + std::to_string(r) + ") f_" + std::to_string(m));
  rep.params["target_eps"] = sign_vector_string(target.eps);
  return rep;
}

}  // namespace

SuiteOutcome run_golden(Workspace& ws, const std::optional<std::string>& only) {
  SuiteOutcome out{"golden", only.value_or("all"), {}};
  for (const auto& e : golden_entries()) {
    if (only && *only != e.preset) continue;
    Session& s = ws.session(e.preset);
    const Grid& g = s.grid(e.k, parse_sign_vector(s.chi(), e.eps), e.max_pole);
    out.reports.push_back(compare_golden(e, g));
  }
  return out;
}

SuiteOutcome run_duality(Session& s) {
  SuiteOutcome out{"duality", s.preset().name, {}};
  const QuadCharacter& chi = s.chi();
  for (const auto& a : s.preset().grids) {
    if (a.weight > 1) continue;
    for (const auto& b : s.preset().grids) {
      if (a.weight + b.weight != 2 || (a.weight == 1 && a.max_pole > b.max_pole)) continue;
      if (a.max_pole == 0 && b.max_pole == 0) continue;
      for (const auto& eps : a.eps) {
        const Grid& F = s.grid(a.weight, eps, a.max_pole);
        const Grid& G = s.grid(b.weight, dual_sign(chi, eps), b.max_pole);
        out.reports.push_back(verify_duality(F, G));
        out.reports.push_back(lift_pairings(F, G));
      }
    }
  }
  return out;
}

SuiteOutcome run_divisibility(Session& s) {
  SuiteOutcome out{"divisibility", s.preset().name, {}};
  const Preset& p = s.preset();
  const QuadCharacter& chi = p.chi;
  const long N = chi.modulus();

  for (const auto& ref : preset_grids(p)) {
    const Grid& g = s.grid(ref.k, ref.eps, ref.max_pole);
    if (ref.k >= 2 && ref.max_pole == 0) out.reports.push_back(check_constant_divisibility(g));
    if (ref.k > 0 && ref.max_pole == 0) {
      for (long r = 2; r <= 25; ++r) {
        if (gcd(r, N) == 1 && in_R0(chi, r) && g.cusp_dimension() == 1) out.reports.push_back(hecke_eigen_check(g, r));
      }
      for (long r : {2L, 3L, 5L, 7L}) {
        if (gcd(r, N) != 1) continue;
        for (const auto& [m, f] : g.forms) out.reports.push_back(hecke_membership(s, g, m, r));
      }
    }
    if (ref.k > 0 || ref.max_pole == 0) continue;

    const HolomorphicLookup dual = s.dual_lookup(ref.k);
    for (long r : {2L, 3L, 4L, 5L, 7L, 9L, 11L}) {
      if (gcd(r, N) != 1) continue;
      const Grid& target = s.grid(ref.k, sign_image(chi, ref.eps, r), ref.max_pole);
      out.reports.push_back(check_hecke_divisibility(g, target, r, dual));
    }
    const PresetGrid* poles = p.find(2 - ref.k, ref.max_pole);
    const Grid* mech = poles ? &s.grid(2 - ref.k, ref.eps, ref.max_pole) : nullptr;
    for (long m : g.orders()) {
      if (m >= 0) continue;
      for (const auto& [q, e] : factorize(-m)) {
        if (N % static_cast<long>(q) != 0) out.reports.push_back(check_differential_divisibility(g, m, static_cast<long>(q), dual, mech));
      }
      if (prime_power_modulus(m, N) > 1) out.reports.push_back(check_prime_power_divisibility(g, m, dual));
      out.reports.push_back(check_full_cusp_corollary(g, m));
      if (ref.k == 0) {
        BorcherdsResult b = borcherds_weight(g, m);
        if (b.report.verdict != "not-applicable") out.reports.push_back(b.report);
      }
    }
  }
  return out;
}

SuiteOutcome run_weil(const QuadCharacter& chi) {
  SuiteOutcome out{"weil", chi.spec(), {}};
  std::vector<QuadCharacter> chars{chi};
  if (chi.modulus() % 8 == 0) chars.emplace_back(chi.modulus(), chi.two_part() == 8 ? -8 : 8);
  for (const auto& c : chars) {
    for (const auto& eps : all_sign_vectors(c)) {
      Report rep;
      rep.theorem = "weil-representation";
      rep.params = {{"character", c.spec()}, {"eps", sign_vector_string(eps)}};
      std::vector<std::optional<std::pair<int, int>>> choices{std::nullopt};
      if (c.modulus() % 8 == 0) {
        choices.clear();
        for (auto o : eight_adic_options(c, eps)) choices.emplace_back(o);
      }
      if (choices.empty()) {
        out.reports.push_back(not_applicable(rep.theorem, rep.params, "no 2-adic Jordan block realizes this sign vector"));
        continue;
      }
      std::optional<int> sig0;
      std::vector<long> qv0;
      nlohmann::json forms = nlohmann::json::array();
      for (const auto& choice : choices) {
        const DiscriminantForm D = build_discform(c, eps, choice);
        forms.push_back(D.description);
        for (const DiscriminantForm& X : {D, dual_discform(D)}) {
          const WeilCheck w = check_weil(X);
          rep.checked += 4;
          if (!w.s_fourth_identity) rep.fail(0, 0, 0, X.description + ": rho(S)^4 != 1");
          if (!w.braid) rep.fail(0, 0, 0, X.description + ": (rho(S)rho(T))^3 != rho(S)^2");
          if (!w.unitary) rep.fail(0, 0, 0, X.description + ": not unitary");
          if (!w.milgram) rep.fail(0, 0, 0, X.description + ": Gauss sum differs from sqrt|D| e(r/8)");
        }
        const int sig = signature(D);
        const std::vector<long> qv = q_values(D);
        if (!sig0) {
          sig0 = sig;
          qv0 = qv;
          rep.params["signature"] = sig;
        } else {
          ++rep.checked;
          if (sig != *sig0 || qv != qv0) rep.fail(0, 0, sig, D.description + " disagrees with the first Jordan choice");
        }
      }
      rep.params["forms"] = forms;
      out.reports.push_back(rep);
    }
  }
  return out;
}

SuiteOutcome run_invariants(Session& s, long extra_precision) {
  SuiteOutcome out{"invariants", s.preset().name, {}};
  for (const auto& ref : preset_grids(s.preset())) {
    const Grid& g = s.grid(ref.k, ref.eps, ref.max_pole);
    out.reports.push_back(property_report("integrality", g, integrality_check(g)));
    out.reports.push_back(property_report("echelon", g, echelon_check(g)));
    out.reports.push_back(property_report("normalization", g, normalization_check(g)));
    out.reports.push_back(property_report("eps-condition", g, epsilon_check(g)));
    if (extra_precision > 0) {
      const Grid high = s.compute(ref.k, ref.eps, ref.max_pole, g.precision + extra_precision);
      Report r = property_report("precision-stability", g, stability_check(g, high));
      r.params["recomputed_precision"] = high.precision;
      out.reports.push_back(r);
    }
  }
  return out;
}

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

SuiteOutcome run_cache_roundtrip(Session& s, const fs::path& scratch_dir) {
  SuiteOutcome out{"cache", s.preset().name, {}};
  const fs::path first = scratch_dir / "a";
  const fs::path second = scratch_dir / "b";
  fs::remove_all(scratch_dir);
  GridCache ca(first), cb(second);
  bool tampered = false;
  for (const auto& ref : preset_grids(s.preset())) {
    const Grid& g = s.grid(ref.k, ref.eps, ref.max_pole);
    const std::string key = cache_key(s.preset().name, g.k, g.eps, g.max_pole, g.precision);
    Report rep;
    rep.theorem = "cache-roundtrip";
    rep.params = grid_params(g);
    ca.store(key, g);
    std::string why;
    auto back = ca.load(key, &why);
    ++rep.checked;
    if (!back) {
      rep.fail(0, 0, 0, "reload failed: " + why);
    } else {
      if (!(*back == g)) rep.fail(0, 0, 0, "reloaded grid differs");
      cb.store(key, *back);
      if (slurp(ca.file_for(key)) != slurp(cb.file_for(key))) rep.fail(0, 0, 0, "re-serialized bytes differ");
    }
    out.reports.push_back(rep);

    if (tampered || g.forms.empty()) continue;
    // Alter one coefficient while leaving the stored checksum untouched.
    tampered = true;
    Report neg;
    neg.theorem = "cache-tamper-detection";
    neg.params = grid_params(g);
    nlohmann::json doc = nlohmann::json::parse(slurp(ca.file_for(key)));
    auto& coeffs = doc["payload"]["forms"][0]["series"]["coeffs"];
    auto it = coeffs.begin();
    it.value() = to_string(parse_rational(it.value().get<std::string>()) + 1);
    std::ofstream(ca.file_for(key), std::ios::binary | std::ios::trunc) << doc.dump(1) << '\n';
    neg.checked = 2;
    if (ca.load(key, &why)) {
      neg.fail(0, 0, 0, "tampered file accepted with checksum verification on");
    } else {
      neg.notes.push_back("rejected with verification on: " + why);
    }
    GridCache lax(first, false);
    auto bad = lax.load(key, &why);
    if (!bad) {
      neg.fail(0, 0, 0, "tampered file unreadable with verification off: " + why);
    } else {
      PropertyResult diff = stability_check(g, *bad);
      if (diff.pass) {
        neg.fail(0, 0, 0, "tampered coefficient not detected by comparison");
      } else {
        const Witness& w = diff.witnesses.front();
        neg.notes.push_back("with verification off the comparison flags m=" + std::to_string(w.m) +
                            ", n=" + std::to_string(w.n));
      }
    }
    out.reports.push_back(neg);
  }
  fs::remove_all(scratch_dir);
  return out;
}

}  // namespace wmf
