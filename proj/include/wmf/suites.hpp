#pragma once

// Verification campaigns over a preset: each suite gathers theorem reports
// and property checks, and passes when no report failed. Not-applicable
// reports are kept in the output but do not fail a suite.

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "wmf/preset.hpp"
#include "wmf/theorems.hpp"

namespace wmf {

struct SuiteOutcome {
  std::string suite;
  std::string preset;
  std::vector<Report> reports;

  bool passed() const;
  long failures() const;
  long checked() const;
  nlohmann::json to_json() const;
};

/// Sessions for several presets sharing one cache directory.
class Workspace {
 public:
  explicit Workspace(std::optional<std::filesystem::path> cache_dir = std::nullopt, bool verify_checksums = true);
  Session& session(const std::string& preset);

 private:
  std::optional<std::filesystem::path> cache_dir_;
  bool verify_;
  std::map<std::string, std::unique_ptr<Session>> sessions_;
};

/// Wraps a grid property check as a report.
Report property_report(const std::string& name, const Grid& g, const PropertyResult& r);

/// Reference expansions, restricted to one preset when `only` is given.
SuiteOutcome run_golden(Workspace& ws, const std::optional<std::string>& only = std::nullopt);

/// Coefficient duality and pairing constant terms for every pair of preset
/// grids whose weights sum to 2, plus the vector-valued lift of each pair.
SuiteOutcome run_duality(Session& s);

/// Constant-term, Hecke, prime-power, differential and full-cusp-space
/// divisibility, Borcherds weights, Hecke eigenforms and Hecke images.
SuiteOutcome run_divisibility(Session& s);

/// Weil representation identities for every sign vector, the dual forms,
/// and agreement of the 8 || N Jordan choices.
SuiteOutcome run_weil(const QuadCharacter& chi);

/// Integrality, echelon, normalization and eps-condition on every preset
/// grid, and stability under recomputation at extra precision.
SuiteOutcome run_invariants(Session& s, long extra_precision = 50);

/// Store every preset grid in a scratch cache, reload it and compare the
/// re-serialized bytes; a tampered file must be rejected.
SuiteOutcome run_cache_roundtrip(Session& s, const std::filesystem::path& scratch_dir);

}  // namespace wmf
