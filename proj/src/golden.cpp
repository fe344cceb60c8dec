#include "wmf/golden.hpp"

#include <cctype>
#include <stdexcept>

namespace wmf {

QSeries parse_series(const std::string& text, long precision) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '{' && c != '}') s += c;
  }
  QSeries out(precision);
  std::size_t i = 0;
  auto bad = [&](const std::string& why) { throw std::invalid_argument("parse_series: " + why + " in '" + text + "'"); };
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      bad("missing operator");
    }
    std::size_t j = i;
    while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/')) ++j;
    Rational c = j > i ? parse_rational(s.substr(i, j - i)) : Rational(1);
    long e = 0;
    if (j < s.size() && s[j] == 'q') {
      ++j;
      e = 1;
      if (j < s.size() && s[j] == '^') {
        ++j;
        std::size_t k = j;
        if (k < s.size() && s[k] == '-') ++k;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
        if (k == j) bad("missing exponent");
        e = std::stol(s.substr(j, k - j));
        j = k;
      }
    } else if (j == i) {
      bad("empty term");
    }
    if (e >= precision) bad("term beyond the stated precision");
    out.set(e, out.coeff(e) + sign * c);
    i = j;
  }
  return out;
}

const std::vector<GoldenEntry>& golden_entries() {
  static const std::vector<GoldenEntry> entries = {
      {"N5 weight 0 f_-1", "N5", 0, "+1", 9, -1,
       "q^-1 + 5 + 11q - 54q^4 + 55q^5 + 44q^6 - 395q^9 + 340q^10", 11, ""},
      {"N5 weight 0 f_-4", "N5", 0, "+1", 9, -4,
       "q^-4 + 15 - 216q + 4959q^4 + 22040q^5 - 90984q^6 + 409944q^9 + 1388520q^10", 11, ""},
      {"N5 weight 0 f_-5", "N5", 0, "+1", 9, -5,
       "1/2q^-5 + 15 + 275q + 27550q^4 + 43893q^5 + 255300q^6 + 4173825q^9 + 4807100q^10", 11, ""},

      {"N8 weight 2 f_0", "N8", 2, "+1", 7, 0, "1/2 - 2q - 3q^2 - 5q^4 - 2q^6 - 16q^7 - 9q^8 - 14q^9", 10, ""},
      {"N8 weight 2 f_-1", "N8", 2, "+1", 7, -1, "q^-1 - 2q - 8q^2 + 16q^4 + 48q^6 - 7q^7 - 96q^8 + 18q^9", 10, ""},
      {"N8 weight 2 f_-2", "N8", 2, "+1", 7, -2,
       "1/2q^-2 - 4q + 3q^2 - 28q^4 + 72q^6 + 224q^7 - 168q^8 - 540q^9", 10, ""},
      {"N8 weight 2 f_-4", "N8", 2, "+1", 7, -4,
       "1/2q^-4 + 4q - 14q^2 - 89q^4 - 420q^6 + 1568q^7 - 1460q^8 + 5148q^9", 10, ""},
      {"N8 weight 2 f_-6", "N8", 2, "+1", 7, -6,
       "1/2q^-6 + 8q + 24q^2 - 280q^4 + 1708q^6 - 7616q^7 - 8016q^8 + 31800q^9", 10, ""},
      {"N8 weight 2 f_-7", "N8", 2, "+1", 7, -7,
       "q^-7 - q + 64q^2 + 896q^4 - 6528q^6 - 128q^7 - 34048q^8 - 18q^9", 10, ""},

      {"N8 weight 0 g_-1", "N8", 0, "+1", 7, -1, "q^-1 + 2 + 2q + 4q^2 - 4q^4 - 8q^6 + q^7 + 12q^8 - 2q^9", 10, ""},
      {"N8 weight 0 g_-2", "N8", 0, "+1", 7, -2,
       "1/2q^-2 + 3 + 8q - 3q^2 + 14q^4 - 24q^6 - 64q^7 + 42q^8 + 120q^9", 10, ""},
      {"N8 weight 0 g_-4", "N8", 0, "+1", 7, -4,
       "1/2q^-4 + 5 - 16q + 28q^2 + 89q^4 + 280q^6 - 896q^7 + 730q^8 - 2288q^9", 10, ""},
      {"N8 weight 0 g_-6", "N8", 0, "+1", 7, -6,
       "1/2q^-6 + 2 - 48q - 72q^2 + 420q^4 - 1708q^6 + 6528q^7 + 6012q^8 - 21200q^9", 10, ""},
      {"N8 weight 0 g_-7", "N8", 0, "+1", 7, -7,
       "q^-7 + 16 + 7q - 224q^2 - 1568q^4 + 7616q^6 + 128q^7 + 29792q^8 + 14q^9", 10, ""},

      {"N15 weight 3 g_1", "N15", 3, "(1,1)", 0, 1,
       "q - 3q^4 - 3q^6 + 9q^9 + 5q^10 - 15q^15 + 5q^16 - 22q^19 + 21q^24 + 25q^25 + 2q^31 - 14q^34 - 27q^36"
       " - 35q^40 + 34q^46 + 49q^49 + 42q^51 - 27q^54 + 45q^60 - 118q^61 + 13q^64 - 102q^69 + 66q^76",
       77, ""},
      {"N15 weight 3 g_2", "N15", 3, "(-1,-1)", 0, 2, "q^2 - 3q^3 + 5q^5 - 7q^8 + 9q^12", 15, ""},

      {"N13 weight 6 f_0 plus", "N13", 6, "+1", 0, 0,
       "1/2 - 26q^9 - 39q^10 - 91q^12 - 78q^13 - 195q^14 - 390q^16 - 546q^17", 20, ""},
      {"N13 weight 6 f_0 minus", "N13", 6, "-1", 0, 0,
       "1/2 + 13q^7 + 13q^8 + 65q^11 + 65q^13 + 286q^15 + 728q^18 + 1001q^19", 20, ""},

      {"N15 weight -1 f_-10 eps1", "N15", -1, "(-1,-1)", 11, -10,
       "1/2q^-10 - 15/2 + 45q^2 - 60q^3 + 68q^5 + 410q^8 - 1395q^12 - 1584q^15 + 5320q^17 - 6870q^18", 20, ""},
      {"N15 weight -1 f_-11 eps4", "N15", -1, "(1,1)", 11, -11,
       "q^-11 - 15 - 47q + 92q^4 + 498q^6 - 543q^9", 10,
       "tabulated with leading term q^-4; the eps4 grid has no order -4 and every other printed coefficient "
       "matches the order -11 form"},

      {"N1 weight 12 f_0", "N1", 12, "()", 0, 0, "1 + 196560q^2 + 16773120q^3 + 398034000q^4", 5, ""},
  };
  return entries;
}

Report compare_golden(const GoldenEntry& e, const Grid& g) {
  Report rep;
  rep.theorem = "golden-table";
  rep.params = {{"name", e.name}, {"preset", e.preset}, {"k", e.k}, {"eps", e.eps}, {"order", e.order}};
  if (!e.remark.empty()) rep.notes.push_back(e.remark);
  const QSeries want = parse_series(e.expansion, e.precision);
  if (!g.has(e.order)) {
    rep.fail(e.order, e.order, 0, "grid has no form of this order");
    return rep;
  }
  const QSeries& got = g.at(e.order);
  if (got.precision() < e.precision) {
    rep.fail(e.order, got.precision(), 0, "grid precision below the table");
    return rep;
  }
  rep.lo = std::min(e.order, want.valuation().value_or(e.order));
  rep.hi = e.precision - 1;
  for (long n = rep.lo; n < e.precision; ++n) {
    ++rep.checked;
    if (got.coeff(n) != want.coeff(n)) {
      rep.fail(e.order, n, got.coeff(n), "expected " + to_string(want.coeff(n)));
    }
  }
  return rep;
}

}  // namespace wmf
