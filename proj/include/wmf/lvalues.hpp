#pragma once

// Bernoulli numbers, generalized Bernoulli numbers and L-values at negative
// integers, with the classical denominator predictions.

#include <optional>

#include "wmf/arith.hpp"
#include "wmf/characters.hpp"

namespace wmf {

/// B_k with B_1 = -1/2.
Rational bernoulli(int k);

/// Bernoulli polynomial B_k(x).
Rational bernoulli_poly(int k, const Rational& x);

/// B_{k,chi} = f^{k-1} sum_{a=1}^{f} chi(a) B_k(a/f), f the conductor.
/// Returns 0 on parity mismatch chi(-1) != (-1)^k.
Rational gen_bernoulli(int k, const KroneckerChar& chi);

struct LValue {
  int k = 0;
  KroneckerChar chi;
  Rational value;  // L(1-k, chi)
  Integer denominator;
};

/// L(1-k, chi) = -B_{k,chi}/k, k >= 2.
LValue l_value_neg(int k, const KroneckerChar& chi);

/// Carlitz-type denominator prediction: p^{nu+1} for N = p odd prime when
/// p | 1 - chi(t) t^k (t a primitive root), 2 for N = 4 and k odd, else none.
std::optional<Integer> carlitz_denominator_prediction(long N, int k, const KroneckerChar& chi);

/// Denominator of B_k/(2k) for even k >= 2; divides s(0) a_0(n) at level one.
Integer staudt_clausen_divisor(int k);

}  // namespace wmf
