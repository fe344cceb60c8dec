#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "wmf/golden.hpp"
#include "wmf/preset.hpp"
#include "wmf/reduced.hpp"

using namespace wmf;

namespace {

Session& session(const std::string& name) {
  static std::map<std::string, std::unique_ptr<Session>> cache;
  auto& s = cache[name];
  if (!s) s = std::make_unique<Session>(load_preset(name));
  return *s;
}

SignVector sv(const QuadCharacter& chi, const char* s) { return parse_sign_vector(chi, s); }

bool clean(const PropertyResult& r) { return r.pass && r.witnesses.empty(); }

Grid tiny_grid() {
  Grid g;
  g.chi = QuadCharacter(5);
  g.eps = sv(g.chi, "+1");
  g.max_pole = 1;
  g.precision = 6;
  g.forms.emplace(-1, parse_series("q^-1 + 5 + 11q - 54q^4 + 55q^5", 6));
  return g;
}

}  // namespace

TEST_CASE("every preset grid satisfies the structural invariants") {
  for (const auto& name : preset_names()) {
    Session& s = session(name);
    for (const auto& pg : s.preset().grids) {
      for (const auto& eps : pg.eps) {
        const Grid& g = s.grid(pg.weight, eps, pg.max_pole);
        INFO(name << " k=" << pg.weight << " eps=" << sign_vector_string(eps));
        CHECK(clean(integrality_check(g)));
        CHECK(clean(echelon_check(g)));
        CHECK(clean(normalization_check(g)));
        CHECK(clean(epsilon_check(g)));
        CHECK(g.precision == s.precision_for(pg.weight, pg.max_pole, pg.precision));
        auto it = pg.expected_orders.find(sign_vector_string(eps));
        if (it != pg.expected_orders.end()) CHECK(g.orders() == it->second);
      }
    }
  }
}

TEST_CASE("eps condition removes exponents with the wrong local sign") {
  Session& s = session("N8");
  const Grid& g = s.grid(2, sv(s.chi(), "+1"), 7);
  for (const auto& [m, f] : g.forms) {
    for (long n : {3L, 5L, 11L, 13L, 19L}) CHECK(f.coeff(n) == 0);
  }
  const Grid& h = s.grid(2, sv(s.chi(), "-1"), 7);
  for (const auto& [m, f] : h.forms) {
    for (long n : {1L, 7L, 9L, 15L}) CHECK(f.coeff(n) == 0);
  }
}

TEST_CASE("leading coefficients are 1/s(m)") {
  Session& s = session("N13");
  const Grid& g = s.holomorphic(6, sv(s.chi(), "-1"));
  CHECK(g.orders() == std::vector<long>{0, 2, 5, 6});
  CHECK(g.at(0).coeff(0) == make_rational(1, 2));
  CHECK(g.at(2).coeff(2) == 1);
  CHECK(g.at(2).coeff(0) == 0);
  CHECK(g.cusp_dimension() == 3);
}

TEST_CASE("ell counts allowed pole orders without a reduced form") {
  // Each such order is obstructed by a cusp form of the dual weight.
  for (const char* name : {"N5", "N8", "N15"}) {
    Session& s = session(name);
    for (const auto& pg : s.preset().grids) {
      if (pg.max_pole == 0 || pg.weight > 0) continue;
      for (const auto& eps : pg.eps) {
        const Grid& g = s.grid(pg.weight, eps, pg.max_pole);
        const Grid* dual = nullptr;
        const PresetGrid* hp = s.preset().find(2 - pg.weight, 0);
        if (!hp) continue;
        dual = &s.holomorphic(2 - pg.weight, dual_sign(s.chi(), eps));
        INFO(name << " eps=" << sign_vector_string(eps));
        CHECK(g.ell == dual->cusp_dimension());
      }
    }
  }
}

TEST_CASE("a weight -1 form from the tables is integral after scaling") {
  Session& s = session("N15");
  const Grid& g = s.grid(-1, sv(s.chi(), "(-1,-1)"), 11);
  REQUIRE(g.has(-10));
  CHECK(g.at(-10).coeff(-10) == make_rational(1, 2));
  CHECK(clean(integrality_check(g)));
}

TEST_CASE("empty eps-subspace gives an empty grid") {
  Pool p = build_pool(QuadCharacter(1), -10, 1, 20);
  Grid g = reduced_grid(p, QuadCharacter(1), {}, 20);
  CHECK(g.forms.empty());
  CHECK(g.orders().empty());
  CHECK(clean(integrality_check(g)));
}

TEST_CASE("integrality check reports the offending coefficient") {
  Grid g = tiny_grid();
  CHECK(clean(integrality_check(g)));
  g.forms.at(-1).set(4, make_rational(1, 3));
  PropertyResult r = integrality_check(g);
  CHECK_FALSE(r.pass);
  REQUIRE(r.witnesses.size() == 1);
  CHECK(r.witnesses[0].m == -1);
  CHECK(r.witnesses[0].n == 4);
}

TEST_CASE("echelon and normalization checks catch broken grids") {
  Grid g = tiny_grid();
  g.forms.emplace(0, QSeries::constant(make_rational(1, 2), 6));
  CHECK_FALSE(echelon_check(g).pass);
  Grid h = tiny_grid();
  h.forms.at(-1).set(-1, 2);
  CHECK_FALSE(normalization_check(h).pass);
}

TEST_CASE("stability check compares the common window") {
  Grid a = tiny_grid();
  Grid b = a;
  b.precision = 4;
  b.forms.at(-1) = b.forms.at(-1).truncated(4);
  CHECK(clean(stability_check(b, a)));
  b.forms.at(-1).set(1, 12);
  PropertyResult r = stability_check(b, a);
  CHECK_FALSE(r.pass);
  REQUIRE_FALSE(r.witnesses.empty());
  CHECK(r.witnesses[0].n == 1);
}
