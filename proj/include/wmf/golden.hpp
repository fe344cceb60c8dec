#pragma once

// Reference expansions tabulated in the literature for the shipped presets,
// and the comparison used by selftest and the acceptance suite.

#include <string>
#include <vector>

#include "wmf/qseries.hpp"
#include "wmf/theorems.hpp"

namespace wmf {

/// Parses "1/2q^-5 + 15 + 275q - 54q^{4}" into a series of the given
/// precision. Throws std::invalid_argument on malformed input.
QSeries parse_series(const std::string& text, long precision);

struct GoldenEntry {
  std::string name;    // e.g. "N8 weight 2 f_-4"
  std::string preset;
  int k = 0;
  std::string eps;
  long max_pole = 0;
  long order = 0;
  std::string expansion;
  long precision = 0;
  std::string remark;  // why an entry differs from its printed form, if it does
};

const std::vector<GoldenEntry>& golden_entries();

/// Digit-for-digit comparison of every coefficient below the entry precision.
Report compare_golden(const GoldenEntry& e, const Grid& g);

}  // namespace wmf
