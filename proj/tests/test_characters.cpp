#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "wmf/characters.hpp"

using namespace wmf;

namespace {

int legendre_by_squares(long a, long p) {
  long r = ((a % p) + p) % p;
  if (r == 0) return 0;
  for (long x = 1; x < p; ++x) {
    if (x * x % p == r) return 1;
  }
  return -1;
}

SignVector sv(const QuadCharacter& chi, const char* s) { return parse_sign_vector(chi, s); }

}  // namespace

TEST_CASE("character values and local components") {
  QuadCharacter c15(15);
  CHECK(c15(2) == 1);
  CHECK(c15.local(3, 2) == legendre_by_squares(2, 3));
  CHECK(c15.local(5, 2) == legendre_by_squares(2, 5));
  CHECK(c15.local(3, 2) == -1);
  CHECK(c15.local(5, 2) == -1);
  QuadCharacter c8(8, 8);
  CHECK(c8(7) == 1);
  CHECK(c8(3) == -1);
  for (long n : {0L, 3L, 6L, 9L}) CHECK(c15(n) == 0);
  CHECK(c8(4) == 0);
  CHECK(QuadCharacter(5)(5) == 0);
}

TEST_CASE("the product of the local components is the character") {
  std::mt19937_64 rng(1);
  for (long N : {5L, 8L, 13L, 15L}) {
    for (int two : {8, -8}) {
      QuadCharacter chi(N, two);
      for (int i = 0; i < 10000; ++i) {
        long n = static_cast<long>(rng() % 200001) - 100000;
        int prod = 1;
        for (long p : chi.primes()) prod *= chi.local(p, n);
        CHECK(prod == chi(n));
      }
    }
  }
}

TEST_CASE("parsing and printing characters and sign vectors") {
  CHECK(QuadCharacter::parse("N=8,two=-8").disc() == -8);
  CHECK(QuadCharacter::parse(QuadCharacter(15).spec()) == QuadCharacter(15));
  QuadCharacter c15(15);
  auto all = all_sign_vectors(c15);
  REQUIRE(all.size() == 4);
  CHECK(sign_vector_string(all[0]) == "(-1,-1)");
  CHECK(sign_vector_string(all[1]) == "(1,-1)");
  CHECK(sign_vector_string(all[2]) == "(-1,1)");
  CHECK(sign_vector_string(all[3]) == "(1,1)");
  CHECK(sv(c15, "+-") == sv(c15, "(1,-1)"));
  CHECK_THROWS_AS(sv(c15, "(1,1,1)"), std::invalid_argument);
  CHECK(all_sign_vectors(QuadCharacter(1)).size() == 1);
}

TEST_CASE("dual sign vectors") {
  QuadCharacter c8(8, 8);
  CHECK(dual_sign(c8, sv(c8, "+1")) == sv(c8, "+1"));
  QuadCharacter c15(15);
  CHECK(dual_sign(c15, sv(c15, "(-1,-1)")) == sv(c15, "(1,-1)"));
  for (long N : {5L, 8L, 13L, 15L}) {
    QuadCharacter chi(N);
    for (const auto& e : all_sign_vectors(chi)) CHECK(dual_sign(chi, dual_sign(chi, e)) == e);
  }
}

TEST_CASE("s factor") {
  CHECK(s_factor(0, 8) == 2);
  CHECK(s_factor(-1, 8) == 1);
  CHECK(s_factor(-10, 15) == 2);
  CHECK(s_factor(0, 15) == 4);
  CHECK(s_factor(30, 15) == 4);
  for (long N : {5L, 8L, 13L, 15L}) {
    for (long m = -60; m <= 60; ++m) CHECK(s_factor(m, N) == s_factor(((m % N) + N) % N, N));
  }
}

TEST_CASE("eps condition") {
  QuadCharacter c8(8, 8);
  CHECK_FALSE(epsilon_allows(c8, sv(c8, "+1"), 3));
  CHECK(epsilon_allows(c8, sv(c8, "+1"), 7));
  CHECK(epsilon_allows(c8, sv(c8, "+1"), 2));
  QuadCharacter c13(13);
  CHECK(epsilon_allows(c13, sv(c13, "+1"), 9));
  CHECK(epsilon_allows(c13, sv(c13, "-1"), 7));
  CHECK_FALSE(epsilon_allows(c13, sv(c13, "+1"), 7));
  // Exactly one sign survives at units, both at multiples of p.
  for (long n = -30; n <= 30; ++n) {
    int allowed = epsilon_allows(c13, sv(c13, "+1"), n) + epsilon_allows(c13, sv(c13, "-1"), n);
    CHECK(allowed == (n % 13 == 0 ? 2 : 1));
  }
}

TEST_CASE("fundamental discriminants and products") {
  CHECK(fundamental_discriminants_dividing(15) == std::vector<long>{-15, -3, 1, 5});
  CHECK(char_product({-3}, {5}).disc == -15);
  CHECK(char_product({-4}, {-4}).disc == 1);
}
