#pragma once

// Exact arithmetic: big rationals (GMP), Kronecker symbols, factorization,
// and dense cyclotomic numbers.

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace wmf {

using Integer = mpz_class;
using Rational = mpq_class;

/// Builds num/den in canonical form. Throws std::domain_error on den == 0.
Rational make_rational(const Integer& num, const Integer& den);
Rational make_rational(long num, long den = 1);

/// "n" for integers, "n/d" otherwise.
std::string to_string(const Rational& x);
Rational parse_rational(const std::string& s);

bool is_integral(const Rational& x);

/// True iff d divides x exactly, i.e. x/d is an integer. x must be integral.
bool divides(const Integer& d, const Rational& x);

long gcd(long a, long b);
long lcm(long a, long b);

/// Kronecker symbol (a/n), full extension to n <= 0 and even n.
int kronecker(long a, long n);

/// Prime factorization of |n|; n == 0 is rejected with std::invalid_argument.
std::map<std::uint64_t, int> factorize(long long n);

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Distinct prime divisors of |n| (n != 0), ascending.
std::vector<long> prime_divisors(long n);

/// Positive divisors of n > 0, ascending.
std::vector<long> divisors(long n);

long euler_phi(long n);

/// Smallest primitive root modulo an odd prime p.
long primitive_root(long p);

/// Exponent of p in n (n != 0).
int valuation(long n, long p);

Integer ipow(const Integer& base, unsigned long e);

/// Element of Q(zeta_M) stored as a polynomial in zeta_M of degree < phi(M),
/// i.e. reduced modulo the M-th cyclotomic polynomial. The representation is
/// canonical for a fixed order; comparisons across orders promote to the lcm.
class Cyclotomic {
 public:
  /// Orders above this bound are rejected with std::overflow_error.
  static long max_order;

  Cyclotomic() : Cyclotomic(1) {}
  explicit Cyclotomic(long order);
  Cyclotomic(long order, const Rational& value);

  /// zeta_order^power
  static Cyclotomic zeta(long order, long power);
  /// e(num/den) = exp(2 pi i num/den), living in Q(zeta_den).
  static Cyclotomic e(long num, long den);

  long order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  /// Same element viewed in Q(zeta_new_order); new_order must be a multiple.
  Cyclotomic promote(long new_order) const;

  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Rational& c);
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Rational& c) { return a *= c; }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

  /// Complex conjugation (zeta -> zeta^{-1}).
  Cyclotomic conjugate() const;
  bool is_zero() const;
  /// Rational value if the element lies in Q.
  bool is_rational() const;
  Rational rational_part() const { return coeffs_.empty() ? Rational(0) : coeffs_[0]; }

  /// The embedding zeta_M -> exp(2 pi i / M).
  std::complex<double> embed() const;

  std::string to_string() const;

 private:
  long order_;
  std::vector<Rational> coeffs_;  // size phi(order_)

  static Cyclotomic from_full(long order, std::vector<Rational> full);
};

/// Integer coefficients of the M-th cyclotomic polynomial, lowest degree first.
const std::vector<long>& cyclotomic_polynomial(long m);

}  // namespace wmf
