#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "wmf/golden.hpp"
#include "wmf/operators.hpp"
#include "wmf/preset.hpp"

using namespace wmf;

namespace {

Session& session(const std::string& name) {
  static std::map<std::string, std::unique_ptr<Session>> cache;
  auto& s = cache[name];
  if (!s) s = std::make_unique<Session>(load_preset(name));
  return *s;
}

SignVector sv(const QuadCharacter& chi, const char* s) { return parse_sign_vector(chi, s); }

// Reference Hecke action written straight from the divisor sum.
Rational hecke_coeff(const QSeries& f, const QuadCharacter& chi, int k, long r, long n) {
  Rational b = 0;
  for (long d = 1; d <= r; ++d) {
    if (r % d || (n % d)) continue;
    Rational dk = 1;
    for (int i = 0; i < k - 1; ++i) dk *= d;
    if (k - 1 < 0) {
      dk = 1;
      for (int i = 0; i < 1 - k; ++i) dk /= d;
    }
    b += chi(d) * dk * f.coeff(r * n / (d * d));
  }
  return b;
}

}  // namespace

TEST_CASE("T(1) is the identity") {
  Session& s = session("N5");
  const Grid& g = s.grid(0, sv(s.chi(), "+1"), 9);
  for (const auto& [m, f] : g.forms) CHECK(hecke_T(f, s.chi(), 0, 1) == f);
}

TEST_CASE("T(r) matches the divisor-sum formula") {
  Session& s = session("N8");
  const Grid& g = s.grid(2, sv(s.chi(), "+1"), 7);
  for (long r : {3L, 5L, 9L}) {
    for (const auto& [m, f] : g.forms) {
      QSeries t = hecke_T(f, s.chi(), 2, r);
      CHECK(t.precision() <= (f.precision() + r - 1) / r);
      for (long n = -7 * r; n < t.precision(); ++n) CHECK(t.coeff(n) == hecke_coeff(f, s.chi(), 2, r, n));
    }
  }
}

TEST_CASE("sign images and the subgroup R0") {
  QuadCharacter c15(15);
  CHECK(sign_image(c15, sv(c15, "(1,1)"), 2) == sv(c15, "(-1,-1)"));
  CHECK(in_R0(c15, 4));
  CHECK(in_R0(c15, 19));
  CHECK_FALSE(in_R0(c15, 2));
  for (const auto& e : all_sign_vectors(c15)) {
    CHECK(sign_image(c15, e, 4) == e);
    CHECK(sign_image(c15, sign_image(c15, e, 7), 7) == e);
  }
}

TEST_CASE("T(r) carries each eps-subspace to the image sign vector") {
  Session& s = session("N15");
  for (const auto& eps : all_sign_vectors(s.chi())) {
    const Grid& g = s.holomorphic(3, eps);
    for (long r : {2L, 4L, 7L, 11L}) {
      const SignVector target = sign_image(s.chi(), eps, r);
      for (const auto& [m, f] : g.forms) {
        QSeries t = hecke_T(f, s.chi(), 3, r);
        for (const auto& [n, c] : t.terms()) {
          INFO("r=" << r << " m=" << m << " n=" << n);
          CHECK(epsilon_allows(s.chi(), target, n));
        }
      }
    }
  }
}

TEST_CASE("Hecke operators commute and multiply for coprime indices") {
  Session& s = session("N15");
  const Grid& g = s.holomorphic(3, sv(s.chi(), "(1,1)"));
  for (const auto& [m, f] : g.forms) {
    QSeries a = hecke_T(hecke_T(f, s.chi(), 3, 2), s.chi(), 3, 7);
    QSeries b = hecke_T(hecke_T(f, s.chi(), 3, 7), s.chi(), 3, 2);
    QSeries c = hecke_T(f, s.chi(), 3, 14);
    CHECK(a.agrees_with(b));
    CHECK(a.agrees_with(c));
  }
}

TEST_CASE("T(p) for p dividing the level is refused") {
  QuadCharacter c15(15);
  QSeries f = QSeries::monomial(1, 1, 30);
  CHECK_THROWS_AS(hecke_T(f, c15, 3, 3), std::invalid_argument);
  CHECK_THROWS_AS(hecke_T(f, c15, 3, 10), std::invalid_argument);
}

TEST_CASE("differential operator") {
  QSeries f = parse_series("q^-5 + 15 + 275q - 2800q^2", 3);
  QSeries d = differential_power(f, 0);
  CHECK(d.coeff(-5) == -5);
  CHECK(d.coeff(0) == 0);
  CHECK(d.coeff(1) == 275);
  CHECK(d.coeff(2) == -5600);
  QSeries g = parse_series("1/2q^-10 + 3q", 2);
  QSeries dg = differential_power(g, -1);
  CHECK(dg.coeff(-10) == 50);
  CHECK(dg.coeff(1) == 3);
  CHECK_THROWS(differential_power(g, 2));
}
