#pragma once

// Level presets shipped as JSON under data/presets, and a Session that
// computes (or loads from the cache) the grids a preset describes.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "wmf/cache.hpp"
#include "wmf/eta.hpp"
#include "wmf/reduced.hpp"
#include "wmf/theorems.hpp"

namespace wmf {

struct PresetGrid {
  int weight = 0;
  std::vector<SignVector> eps;
  long max_pole = 0;
  std::optional<long> precision;
  /// sign vector string -> attainable orders the computed grid must have
  std::map<std::string, std::vector<long>> expected_orders;
};

struct Preset {
  std::string name;
  QuadCharacter chi{1};
  long margin = 10;
  std::optional<EtaQuotient> ascent;
  long ascent_pole = 0;
  long ascent_search_bound = 12;
  std::vector<PresetGrid> grids;

  const PresetGrid* find(int k, long max_pole) const;
};

class PresetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Directory holding the shipped presets (WMF_PRESET_DIR overrides the
/// compiled-in location).
std::filesystem::path preset_dir();
std::vector<std::string> preset_names();

Preset parse_preset(const nlohmann::json& j);
/// Loads "N5" from the preset directory, or a path to a JSON file.
Preset load_preset(const std::string& name_or_path);

/// Checks the ascent function (weight 0, trivial character, the stated pole
/// at infinity and no other poles, minimal among bounded quotients). Throws
/// PresetError.
void validate_preset(const Preset& p);

struct SessionStats {
  long cache_hits = 0;
  long cache_misses = 0;
  long computed = 0;
};

class Session {
 public:
  explicit Session(Preset preset, std::optional<std::filesystem::path> cache_dir = std::nullopt,
                   bool verify_checksums = true);

  const Preset& preset() const { return preset_; }
  const QuadCharacter& chi() const { return preset_.chi; }

  /// certification_precision unless overridden (explicitly or by the preset);
  /// explicit values below it are honored with a warning.
  long precision_for(int k, long max_pole, std::optional<long> override_precision = std::nullopt);

  const Grid& grid(int k, const SignVector& eps, long max_pole, std::optional<long> precision = std::nullopt);
  const Grid& holomorphic(int k, const SignVector& eps);
  /// Lookup of weight 2-k holomorphic grids for hypotheses of weight-k checks.
  HolomorphicLookup dual_lookup(int k);

  /// Uncached computation (used for stability checks).
  Grid compute(int k, const SignVector& eps, long max_pole, long precision);

  const SessionStats& stats() const { return stats_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  Preset preset_;
  std::optional<GridCache> cache_;
  std::map<std::string, Grid> grids_;
  std::map<std::string, Pool> pools_;
  SessionStats stats_;
  std::vector<std::string> warnings_;

  void check_expected(const Grid& g) const;
};

}  // namespace wmf
