#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "wmf/operators.hpp"
#include "wmf/preset.hpp"
#include "wmf/theorems.hpp"

using namespace wmf;

namespace {

Session& session(const std::string& name) {
  static std::map<std::string, std::unique_ptr<Session>> cache;
  auto& s = cache[name];
  if (!s) s = std::make_unique<Session>(load_preset(name));
  return *s;
}

SignVector sv(const QuadCharacter& chi, const char* s) { return parse_sign_vector(chi, s); }

bool divisible(const Rational& v, long d) { return is_integral(v) && v.get_num() % d == 0; }

}  // namespace

TEST_CASE("coefficient duality between weights 0 and 2") {
  for (const char* name : {"N5", "N8"}) {
    Session& s = session(name);
    for (const auto& e : all_sign_vectors(s.chi())) {
      const Grid& a = s.grid(0, e, 7);
      const Grid& b = s.grid(2, dual_sign(s.chi(), e), 7);
      // Independent pass over the table: a_m(-d) = -b_d(-m).
      long pairs = 0;
      for (const auto& [m, f] : a.forms) {
        for (const auto& [d, g] : b.forms) {
          if (-d >= f.precision() || -m >= g.precision()) continue;
          CHECK(f.coeff(-d) == -g.coeff(-m));
          ++pairs;
        }
      }
      CHECK(pairs > 0);
      Report r = verify_duality(a, b);
      CHECK(r.verdict == "pass");
      CHECK(r.checked > 0);
      CHECK(verify_duality(b, a).verdict == "pass");
    }
  }
}

TEST_CASE("a corrupted coefficient breaks duality with a witness") {
  Session& s = session("N5");
  const SignVector e = sv(s.chi(), "+1");
  Grid a = s.grid(0, e, 9);
  const Grid& b = s.grid(2, dual_sign(s.chi(), e), 9);
  a.forms.at(-4).set(1, -215);
  Report r = verify_duality(a, b);
  CHECK(r.failed());
  REQUIRE_FALSE(r.witnesses.empty());
  CHECK(r.witnesses[0].m == -4);
}

TEST_CASE("constant terms and L-value denominators") {
  Session& s13 = session("N13");
  Report r = check_constant_divisibility(s13.holomorphic(6, sv(s13.chi(), "+1")));
  CHECK(r.verdict == "pass");
  Session& s1 = session("N1");
  const Grid& g = s1.holomorphic(12, {});
  CHECK(check_constant_divisibility(g).verdict == "pass");
  // The reduced form of order 0 is the Leech theta series.
  CHECK(g.at(0).coeff(1) == 0);
  for (auto [n, c] : std::vector<std::pair<long, long>>{{2, 196560}, {3, 16773120}, {4, 398034000}}) {
    CHECK(g.at(0).coeff(n) == c);
    CHECK(divisible(g.at(0).coeff(n), 65520));
  }
}

TEST_CASE("Hecke divisibility") {
  Session& s = session("N8");
  for (const auto& e : all_sign_vectors(s.chi())) {
    const Grid& src = s.grid(0, e, 7);
    const Grid& tgt = s.grid(0, sign_image(s.chi(), e, 3), 7);
    Report r = check_hecke_divisibility(src, tgt, 3, s.dual_lookup(0));
    CHECK(r.verdict != "fail");
  }
  Session& s5 = session("N5");
  const Grid& src = s5.grid(0, sv(s5.chi(), "+1"), 9);
  Report r4 = check_hecke_divisibility(src, s5.grid(0, sign_image(s5.chi(), src.eps, 4), 9), 4, s5.dual_lookup(0));
  CHECK(r4.verdict == "pass");
}

TEST_CASE("Hecke divisibility is not claimed when a cusp space is nonzero") {
  Session& s = session("N15");
  bool saw_na = false;
  for (const auto& e : all_sign_vectors(s.chi())) {
    const Grid& src = s.grid(-1, e, 11);
    const Grid& tgt = s.grid(-1, sign_image(s.chi(), e, 11), 11);
    Report r = check_hecke_divisibility(src, tgt, 11, s.dual_lookup(-1));
    CHECK_FALSE(r.failed());
    if (r.verdict == "not-applicable") {
      saw_na = true;
      CHECK_FALSE(r.hypotheses.empty());
    }
  }
  CHECK(saw_na);
}

TEST_CASE("prime-power moduli") {
  CHECK(prime_power_modulus(-9, 5) == 9);
  CHECK(prime_power_modulus(-27, 5) == 3);
  CHECK(prime_power_modulus(-4, 5) == 1);
  Session& s = session("N5");
  const Grid& g = s.grid(0, sv(s.chi(), "+1"), 9);
  CHECK(check_prime_power_divisibility(g, -9, s.dual_lookup(0)).verdict == "pass");
}

TEST_CASE("full cusp corollary against a direct scan") {
  Session& s = session("N5");
  const Grid& g = s.grid(0, sv(s.chi(), "+1"), 9);
  for (long m : {-4L, -9L}) {
    CHECK(check_full_cusp_corollary(g, m).verdict == "pass");
    const QSeries& f = g.at(m);
    for (long n = 1; n < f.precision(); ++n) {
      if (gcd(n, m) == 1) CHECK(divisible(s_factor(m, 5) * f.coeff(n), -m));
    }
  }
}

TEST_CASE("Borcherds product weights") {
  Session& s = session("N5");
  const Grid& g = s.grid(0, sv(s.chi(), "+1"), 9);
  BorcherdsResult b1 = borcherds_weight(g, -1);
  REQUIRE(b1.weight);
  CHECK(*b1.weight == 5);
  BorcherdsResult b4 = borcherds_weight(g, -4);
  REQUIRE(b4.weight);
  CHECK(*b4.weight == 15);
  CHECK(*b4.weight == s_factor(0, 5) * g.at(-4).coeff(0) / 2);
}

TEST_CASE("the weight 3 cusp form of level 15 is a Hecke eigenform") {
  Session& s = session("N15");
  const Grid& g = s.holomorphic(3, sv(s.chi(), "(1,1)"));
  REQUIRE(g.cusp_dimension() == 1);
  const QSeries& f = g.at(1);
  CHECK(f.coeff(36) == f.coeff(4) * f.coeff(9));
  CHECK(f.coeff(76) == f.coeff(4) * f.coeff(19));
  for (long r : {4L, 19L, 31L}) CHECK(hecke_eigen_check(g, r).verdict == "pass");
  // T(2) and T(7) leave the sign vector, so they say nothing here.
  for (long r : {2L, 7L}) CHECK(hecke_eigen_check(g, r).verdict == "not-applicable");
}

TEST_CASE("T(2) swaps the two weight 3 cusp forms up to scale") {
  Session& s = session("N15");
  const Grid& g1 = s.holomorphic(3, sv(s.chi(), "(1,1)"));
  const Grid& g2 = s.holomorphic(3, sv(s.chi(), "(-1,-1)"));
  Report r = hecke_image_check(g1.at(1), g1, 2, hecke_T(g1.at(1), s.chi(), 3, 2), "self");
  CHECK(r.verdict == "pass");
  QSeries img = hecke_T(g1.at(1), s.chi(), 3, 2);
  const Rational c = img.coeff(2);
  CHECK(c != 0);
  for (long n = 0; n < img.precision(); ++n) CHECK(img.coeff(n) == c * g2.at(2).coeff(n));
}
