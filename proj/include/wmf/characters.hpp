#pragma once

// Primitive quadratic characters, sign vectors and the epsilon-condition.

#include <map>
#include <string>
#include <vector>

namespace wmf {

/// Kronecker character n -> (d/n) attached to a fundamental discriminant d
/// (d = 1 is the trivial character of conductor 1).
struct KroneckerChar {
  long disc = 1;

  int operator()(long n) const;
  long conductor() const { return disc < 0 ? -disc : disc; }
  bool is_trivial() const { return disc == 1; }
  bool is_even() const { return disc > 0; }
  friend bool operator==(const KroneckerChar&, const KroneckerChar&) = default;
  friend auto operator<=>(const KroneckerChar&, const KroneckerChar&) = default;
};

/// Fundamental discriminants d with |d| dividing n (including 1), ascending.
std::vector<long> fundamental_discriminants_dividing(long n);

/// Product of two Kronecker characters as a primitive character.
KroneckerChar char_product(const KroneckerChar& a, const KroneckerChar& b);

/// Primitive quadratic character of conductor N. For N = 1 this is the
/// trivial character and there are no local components.
class QuadCharacter {
 public:
  /// two_part is +8 or -8 when 8 || N and ignored otherwise.
  explicit QuadCharacter(long N, int two_part = 8);

  /// Parses "N=15" or "N=8,two=+8" (also "N=8,two=-8").
  static QuadCharacter parse(const std::string& spec);
  std::string spec() const;

  long modulus() const { return N_; }
  const std::vector<long>& primes() const { return primes_; }
  KroneckerChar kronecker_form() const { return {disc_}; }
  long disc() const { return disc_; }
  int two_part() const { return two_part_; }

  int operator()(long n) const;
  /// Local component chi_p; p must divide N.
  int local(long p, long n) const;
  /// Discriminant of the local component at p (p*, -4, 8 or -8).
  long local_disc(long p) const;
  /// N_p, the exact p-power dividing N.
  long local_modulus(long p) const;

  friend bool operator==(const QuadCharacter& a, const QuadCharacter& b) { return a.disc_ == b.disc_; }

 private:
  long N_;
  int two_part_ = 8;
  long disc_ = 1;
  std::vector<long> primes_;
};

using SignVector = std::map<long, int>;

/// All 2^omega(N) sign vectors, enumerated with the smallest prime varying
/// fastest and -1 before +1: (-,-), (+,-), (-,+), (+,+).
std::vector<SignVector> all_sign_vectors(const QuadCharacter& chi);

/// Parses "+1", "-1", "(1,1)", "(-1,1)", "+-" style inputs against the primes
/// of chi; "all" is handled by callers.
SignVector parse_sign_vector(const QuadCharacter& chi, const std::string& text);
std::string sign_vector_string(const SignVector& eps);

SignVector dual_sign(const QuadCharacter& chi, const SignVector& eps);

/// 2^omega(gcd(m, N)) with gcd(0, N) = N.
long s_factor(long m, long N);

/// False iff chi_p(n) = -eps_p for some p | N.
bool epsilon_allows(const QuadCharacter& chi, const SignVector& eps, long n);

}  // namespace wmf
