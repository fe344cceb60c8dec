#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "wmf/characters.hpp"
#include "wmf/lvalues.hpp"

using namespace wmf;

namespace {

// Akiyama-Tanigawa, which produces B_1 = +1/2; flipped to the -1/2 convention.
std::vector<Rational> bernoulli_table(int n) {
  std::vector<Rational> out, a(n + 1);
  for (int m = 0; m <= n; ++m) {
    a[m] = make_rational(1, m + 1);
    for (int j = m; j >= 1; --j) a[j - 1] = j * (a[j - 1] - a[j]);
    out.push_back(a[0]);
  }
  out[1] = -out[1];
  return out;
}

Rational binom(int n, int k) {
  Rational r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// f^{k-1} sum_a chi(a) B_k(a/f) with a local Bernoulli table and the
// character given as a list of values chi(1..f).
Rational gen_bernoulli_oracle(int k, const std::vector<int>& chi_values) {
  auto B = bernoulli_table(k);
  const long f = static_cast<long>(chi_values.size());
  Rational total = 0;
  for (long a = 1; a <= f; ++a) {
    if (!chi_values[a - 1]) continue;
    Rational x = make_rational(a, f);
    Rational poly = 0;
    Rational xp = 1;
    // B_k(x) = sum_j C(k,j) B_j x^{k-j}
    std::vector<Rational> pw(k + 1);
    for (int i = 0; i <= k; ++i) {
      pw[i] = xp;
      xp *= x;
    }
    for (int j = 0; j <= k; ++j) poly += binom(k, j) * B[j] * pw[k - j];
    total += chi_values[a - 1] * poly;
  }
  Rational fk = 1;
  for (int i = 0; i < k - 1; ++i) fk *= f;
  return fk * total;
}

}  // namespace

TEST_CASE("Bernoulli numbers") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(1) == make_rational(-1, 2));
  CHECK(bernoulli(2) == make_rational(1, 6));
  CHECK(bernoulli(12) == make_rational(-691, 2730));
  CHECK(Integer(bernoulli(12).get_den()) == 2 * 3 * 5 * 7 * 13);
  auto table = bernoulli_table(30);
  for (int k = 0; k <= 30; ++k) CHECK(bernoulli(k) == table[k]);
}

TEST_CASE("Bernoulli polynomials") {
  CHECK(bernoulli_poly(2, make_rational(1, 2)) == make_rational(-1, 12));
  for (int k = 0; k < 10; ++k) CHECK(bernoulli_poly(k, 0) == bernoulli(k));
}

TEST_CASE("generalized Bernoulli numbers") {
  const KroneckerChar chi5{5};
  CHECK(gen_bernoulli(2, chi5) == make_rational(4, 5));
  CHECK(gen_bernoulli(2, chi5) == gen_bernoulli_oracle(2, {1, -1, -1, 1, 0}));
  CHECK(gen_bernoulli(3, chi5) == 0);
  CHECK(gen_bernoulli(2, KroneckerChar{-3}) == 0);
  std::vector<int> chi13;
  for (long a = 1; a <= 13; ++a) chi13.push_back(kronecker(13, a));
  CHECK(gen_bernoulli(6, KroneckerChar{13}) == gen_bernoulli_oracle(6, chi13));
  std::vector<int> chi15;
  for (long a = 1; a <= 15; ++a) chi15.push_back(kronecker(-15, a));
  CHECK(gen_bernoulli(3, KroneckerChar{-15}) == gen_bernoulli_oracle(3, chi15));
  for (int k = 2; k <= 14; ++k) CHECK(gen_bernoulli(k, KroneckerChar{1}) == bernoulli(k));
}

TEST_CASE("L-values at negative integers") {
  LValue l5 = l_value_neg(2, KroneckerChar{5});
  CHECK(l5.value == make_rational(-2, 5));
  CHECK(l5.denominator == 5);
  LValue l13 = l_value_neg(6, KroneckerChar{13});
  CHECK(l13.denominator % 13 == 0);
  CHECK(l13.value == -gen_bernoulli_oracle(6, [] {
          std::vector<int> v;
          for (long a = 1; a <= 13; ++a) v.push_back(kronecker(13, a));
          return v;
        }()) / 6);
  // N = 15, k = 2: the even character of conductor 15 is (-15/.) only for odd
  // k, so at k = 2 the parity forces L(-1, chi) = 0, an integral value.
  LValue l15 = l_value_neg(2, KroneckerChar{-15});
  CHECK(is_integral(l15.value));
  CHECK(l15.denominator == 1);
}

TEST_CASE("prime-power denominator predictions") {
  CHECK(carlitz_denominator_prediction(13, 6, KroneckerChar{13}) == Integer(13));
  CHECK(carlitz_denominator_prediction(4, 3, KroneckerChar{-4}) == Integer(2));
  CHECK(carlitz_denominator_prediction(5, 2, KroneckerChar{5}) == Integer(5));
  for (auto [N, k, d] : std::vector<std::tuple<long, int, long>>{{13, 6, 13}, {5, 2, 5}, {4, 3, -4}, {5, 4, 5}}) {
    LValue L = l_value_neg(k, KroneckerChar{d});
    auto pred = carlitz_denominator_prediction(N, k, KroneckerChar{d});
    if (pred) CHECK(*pred % L.denominator == 0);
  }
  CHECK(*carlitz_denominator_prediction(13, 6, KroneckerChar{13}) == l_value_neg(6, KroneckerChar{13}).denominator);
  CHECK(*carlitz_denominator_prediction(5, 2, KroneckerChar{5}) == l_value_neg(2, KroneckerChar{5}).denominator);
}

TEST_CASE("level one divisor") {
  Integer d = staudt_clausen_divisor(12);
  CHECK(d % (8 * 9 * 5 * 7 * 13) == 0);
  CHECK(d == 65520);
  for (long a : {196560L, 16773120L, 398034000L}) CHECK(Integer(a) % d == 0);
  Rational b = bernoulli(2) / 4;
  CHECK(staudt_clausen_divisor(2) == Integer(b.get_den()));
}
