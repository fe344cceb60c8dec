#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "wmf/cache.hpp"
#include "wmf/discform.hpp"
#include "wmf/preset.hpp"
#include "wmf/suites.hpp"

using namespace wmf;
namespace fs = std::filesystem;

namespace {

struct RunConfig {
  std::string preset;
  std::optional<int> weight;
  std::string eps = "all";
  std::optional<long> max_pole;
  std::optional<long> precision;
  std::string format = "table";
  std::string cache_dir;
  bool no_verify_checksum = false;
  std::string which = "all";
  long show = 10;
  std::string output;
  std::string two_adic;
};

std::optional<fs::path> cache_dir_of(const RunConfig& c) {
  if (!c.cache_dir.empty()) return fs::path(c.cache_dir);
  return default_cache_dir();
}

std::vector<SignVector> eps_of(const RunConfig& c, const QuadCharacter& chi) {
  if (c.eps == "all") return all_sign_vectors(chi);
  return {parse_sign_vector(chi, c.eps)};
}

void print_warnings(const Session& s) {
  for (const auto& w : s.warnings()) std::cerr << "warning: " << w << "\n";
}

// "- 2q^4" split into the sign and the rest, in the syntax parse_series reads.
std::pair<char, std::string> term(const Rational& c, long e) {
  const char sign = c < 0 ? '-' : '+';
  const Rational a = c < 0 ? Rational(-c) : c;
  std::string body;
  if (e == 0 || a != 1) body = to_string(a);
  if (e == 1) body += "q";
  if (e != 0 && e != 1) body += "q^" + std::to_string(e);
  return {sign, body};
}

// One reduced form per row: leading terms share the first column, the other
// powers of q are aligned in columns.
void print_table(std::ostream& os, const Grid& g, long show) {
  os << "# " << g.chi.spec() << "  k=" << g.k << "  eps=" << sign_vector_string(g.eps) << "  max_pole=" << g.max_pole
     << "  precision=" << g.precision << "  ell=" << g.ell << "\n";
  std::vector<long> rows;
  for (auto it = g.forms.rbegin(); it != g.forms.rend(); ++it) rows.push_back(it->first);
  std::set<long> cols;
  for (long m : rows) {
    for (const auto& [n, c] : g.at(m).terms()) {
      if (n != m && n < show && c != 0) cols.insert(n);
    }
  }
  auto cell_for = [](const Rational& c, long n, bool first) {
    auto [sign, body] = term(c, n);
    return first ? (sign == '-' ? "-" : "") + body : std::string(1, sign) + " " + body;
  };
  std::map<long, std::string> lead;
  std::map<long, std::vector<std::string>> cells;
  std::map<long, std::size_t> width;
  std::size_t label_w = 0, lead_w = 0;
  for (long m : rows) {
    label_w = std::max(label_w, ("f_" + std::to_string(m)).size());
    lead[m] = cell_for(g.at(m).coeff(m), m, true);
    lead_w = std::max(lead_w, lead[m].size());
    for (long n : cols) {
      const Rational c = n > m ? g.at(m).coeff(n) : Rational(0);
      std::string cell = c != 0 ? cell_for(c, n, false) : "";
      width[n] = std::max(width[n], cell.size());
      cells[m].push_back(cell);
    }
  }
  const long upto = std::min(show, g.precision);
  for (long m : rows) {
    std::string label = "f_" + std::to_string(m);
    os << std::string(label_w - label.size(), ' ') << label << " = " << lead[m] << std::string(lead_w - lead[m].size(), ' ');
    std::size_t i = 0;
    for (long n : cols) {
      const std::string& cell = cells[m][i++];
      os << " " << cell << std::string(width[n] - cell.size(), ' ');
    }
    os << " + O(q^" << upto << ")\n";
  }
}

int cmd_basis(const RunConfig& c) {
  Session s(load_preset(c.preset), cache_dir_of(c), !c.no_verify_checksum);
  const Preset& p = s.preset();
  if (!c.weight) throw CLI::ValidationError("--weight is required");
  long M = 0;
  if (c.max_pole) {
    M = *c.max_pole;
  } else {
    for (const auto& g : p.grids) {
      if (g.weight == *c.weight) M = std::max(M, g.max_pole);
    }
  }
  nlohmann::json out = nlohmann::json::array();
  for (const auto& eps : eps_of(c, p.chi)) {
    const Grid& g = s.grid(*c.weight, eps, M, c.precision);
    if (c.format == "json") {
      out.push_back(grid_to_json(g));
    } else {
      print_table(std::cout, g, c.show);
      std::cout << "\n";
    }
  }
  if (c.format == "json") std::cout << out.dump(1) << "\n";
  print_warnings(s);
  return 0;
}

void print_outcome_table(std::ostream& os, const SuiteOutcome& o) {
  os << "== " << o.suite << " [" << o.preset << "]  " << (o.passed() ? "pass" : "FAIL") << "  ("
     << o.reports.size() << " reports, " << o.checked() << " checks)\n";
  for (const auto& r : o.reports) {
    std::string what;
    for (const char* key : {"name", "eps", "k", "m", "order", "r", "p", "dual_k", "image", "forms", "divisor", "weight"}) {
      if (r.params.contains(key)) what += std::string(key) + "=" + (r.params[key].is_string() ? r.params[key].get<std::string>() : r.params[key].dump()) + " ";
    }
    os << "  " << r.verdict << std::string(16 - std::min<std::size_t>(15, r.verdict.size()), ' ') << r.theorem
       << "  " << what << " checked=" << r.checked << "\n";
    for (const auto& w : r.witnesses) {
      os << "      witness m=" << w.m << " n=" << w.n << " value=" << to_string(w.value) << "  " << w.note << "\n";
    }
    if (r.verdict != "pass") {
      for (const auto& n : r.notes) os << "      note: " << n << "\n";
    }
  }
}

int emit(const RunConfig& c, const std::vector<SuiteOutcome>& outcomes) {
  nlohmann::json all = nlohmann::json::array();
  bool ok = true;
  for (const auto& o : outcomes) {
    all.push_back(o.to_json());
    ok = ok && o.passed();
  }
  if (c.format == "json") {
    std::cout << all.dump(1) << "\n";
  } else {
    for (const auto& o : outcomes) print_outcome_table(std::cout, o);
    std::cout << (ok ? "all suites passed" : "FAILURES present") << "\n";
  }
  if (!c.output.empty()) std::ofstream(c.output) << all.dump(1) << "\n";
  if (!ok && c.format != "json") {
    // Machine-readable witnesses for the failures go to stderr.
    for (const auto& o : outcomes) {
      for (const auto& r : o.reports) {
        if (r.failed()) std::cerr << r.to_json().dump() << "\n";
      }
    }
  }
  return ok ? 0 : 1;
}

int cmd_verify(const RunConfig& c) {
  Session s(load_preset(c.preset), cache_dir_of(c), !c.no_verify_checksum);
  std::vector<SuiteOutcome> outcomes;
  const bool all = c.which == "all";
  if (all || c.which == "duality") outcomes.push_back(run_duality(s));
  if (all || c.which == "divisibility") outcomes.push_back(run_divisibility(s));
  if (all || c.which == "weil") outcomes.push_back(run_weil(s.chi()));
  print_warnings(s);
  return emit(c, outcomes);
}

int cmd_discform(const RunConfig& c) {
  const Preset p = load_preset(c.preset);
  std::optional<std::pair<int, int>> two;
  if (!c.two_adic.empty()) {
    int t1 = 0, t2 = 0;
    char comma = 0;
    std::istringstream is(c.two_adic);
    if (!(is >> t1 >> comma >> t2) || comma != ',') throw CLI::ValidationError("--two-adic expects t1,t2");
    two = std::make_pair(t1, t2);
  }
  nlohmann::json out = nlohmann::json::array();
  for (const auto& eps : eps_of(c, p.chi)) {
    nlohmann::json j;
    j["character"] = p.chi.spec();
    j["eps"] = sign_vector_string(eps);
    DiscriminantForm D;
    try {
      D = build_discform(p.chi, eps, two);
    } catch (const std::invalid_argument& e) {
      j["error"] = e.what();
      out.push_back(j);
      continue;
    }
    j["description"] = D.description;
    j["orders"] = D.orders;
    nlohmann::json qs = nlohmann::json::array();
    for (const auto& q : D.q) qs.push_back(to_string(q));
    j["q"] = qs;
    nlohmann::json table = nlohmann::json::array();
    for (const auto& x : D.elements()) table.push_back({{"element", x}, {"Q", to_string(D.Q(x))}});
    j["Q_table"] = table;
    j["signature"] = signature(D);
    if (p.chi.modulus() % 8 == 0) {
      nlohmann::json opts = nlohmann::json::array();
      for (auto [t1, t2] : eight_adic_options(p.chi, eps)) opts.push_back({t1, t2});
      j["two_adic_options"] = opts;
    }
    const WeilCheck w = check_weil(D);
    j["weil"] = {{"s_fourth_identity", w.s_fourth_identity}, {"braid", w.braid}, {"unitary", w.unitary},
                 {"milgram", w.milgram}};
    if (c.format == "json") {
      const WeilRep rho = weil_matrices(D);
      auto mat = [](const CycMatrix& M) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& row : M) {
          nlohmann::json r = nlohmann::json::array();
          for (const auto& x : row) r.push_back(x.to_string());
          a.push_back(r);
        }
        return a;
      };
      j["rho"] = {{"field_order", rho.order}, {"S", mat(rho.S)}, {"T", mat(rho.T)}};
    }
    out.push_back(j);
  }
  if (c.format == "json") {
    std::cout << out.dump(1) << "\n";
    return 0;
  }
  for (const auto& j : out) {
    std::cout << "# " << j["character"].get<std::string>() << "  eps=" << j["eps"].get<std::string>() << "\n";
    if (j.contains("error")) {
      std::cout << "  " << j["error"].get<std::string>() << "\n\n";
      continue;
    }
    std::cout << "  D = " << j["description"].get<std::string>() << "  |D| = " << j["Q_table"].size()
              << "  signature = " << j["signature"].get<int>() << "\n";
    if (j.contains("two_adic_options")) std::cout << "  admissible (t1,t2): " << j["two_adic_options"].dump() << "\n";
    std::cout << "  Q:";
    for (const auto& row : j["Q_table"]) std::cout << "  " << row["element"].dump() << "->" << row["Q"].get<std::string>();
    std::cout << "\n  Weil: rho(S)^4=1 " << j["weil"]["s_fourth_identity"] << ", braid " << j["weil"]["braid"]
              << ", unitary " << j["weil"]["unitary"] << ", Milgram " << j["weil"]["milgram"] << "\n\n";
  }
  return 0;
}

int cmd_selftest(const RunConfig& c) {
  Workspace ws(cache_dir_of(c), !c.no_verify_checksum);
  std::vector<SuiteOutcome> outcomes;
  outcomes.push_back(run_golden(ws));
  const fs::path scratch = fs::temp_directory_path() / ("wmf-selftest-" + std::to_string(::getpid()));
  for (const auto& name : preset_names()) {
    Session& s = ws.session(name);
    outcomes.push_back(run_invariants(s));
    outcomes.push_back(run_cache_roundtrip(s, scratch));
  }
  if (c.format != "json") {
    // Short form: one line per suite, then the first failures.
    bool ok = true;
    int shown = 0;
    for (const auto& o : outcomes) {
      std::cout << (o.passed() ? "pass  " : "FAIL  ") << o.suite << " [" << o.preset << "] " << o.reports.size()
                << " reports, " << o.checked() << " checks\n";
      ok = ok && o.passed();
      for (const auto& r : o.reports) {
        if (!r.failed() || shown >= 10) continue;
        ++shown;
        std::cout << "      " << r.theorem << " " << r.params.dump() << "\n";
        for (const auto& w : r.witnesses) {
          std::cout << "        witness m=" << w.m << " n=" << w.n << " value=" << to_string(w.value) << "  " << w.note
                    << "\n";
        }
      }
    }
    std::cout << (ok ? "selftest passed" : "selftest FAILED") << "\n";
    if (!c.output.empty()) {
      nlohmann::json all = nlohmann::json::array();
      for (const auto& o : outcomes) all.push_back(o.to_json());
      std::ofstream(c.output) << all.dump(1) << "\n";
    }
    return ok ? 0 : 1;
  }
  return emit(c, outcomes);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reduced weakly holomorphic modular form grids and their verification"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub, bool grid_flags) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "table"}));
    sub->add_option("--cache-dir", cfg.cache_dir, "Grid cache directory (default: $WMF_CACHE_DIR, else no cache)");
    sub->add_flag("--no-verify-checksum", cfg.no_verify_checksum, "Accept cache files without checking checksums");
    sub->add_option("--output", cfg.output, "Also write the JSON report to this file");
    if (grid_flags) {
      sub->add_option("--preset", cfg.preset, "Preset name (N1, N5, N8, N13, N15) or JSON path")->required();
      sub->add_option("--eps", cfg.eps, "Sign vector such as +1 or (1,-1), or 'all'");
    }
  };

  auto* basis = app.add_subcommand("basis", "Compute (or load) reduced-form grids");
  common(basis, true);
  basis->add_option("--weight", cfg.weight, "Weight k")->required();
  basis->add_option("--max-pole", cfg.max_pole, "Largest pole order M (default: the preset's largest for k)");
  basis->add_option("--precision", cfg.precision, "Precision override (below certification warns)");
  basis->add_option("--show", cfg.show, "Table display precision");

  auto* verify = app.add_subcommand("verify", "Run verification suites on a preset");
  common(verify, true);
  verify->add_option("--which", cfg.which, "Suite")->check(CLI::IsMember({"duality", "divisibility", "weil", "all"}));

  auto* disc = app.add_subcommand("discform", "Show the discriminant form and Weil representation checks");
  common(disc, true);
  disc->add_option("--two-adic", cfg.two_adic, "Jordan block choice t1,t2 when 8 || N");

  auto* self = app.add_subcommand("selftest", "Reference tables and property suites over every preset");
  common(self, false);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*basis) return cmd_basis(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*disc) return cmd_discform(cfg);
    if (*self) return cmd_selftest(cfg);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const PresetError& e) {
    std::cerr << "preset error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
