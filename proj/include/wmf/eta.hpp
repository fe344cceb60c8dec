#pragma once

// Dedekind eta quotients on Gamma_0(N): expansions, orders at cusps
// (Ligozat), characters, and searches for quotients with a prescribed divisor.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wmf/arith.hpp"
#include "wmf/characters.hpp"
#include "wmf/qseries.hpp"

namespace wmf {

struct EtaQuotient {
  long level = 1;
  std::map<long, long> r;  // divisor delta of level -> exponent

  long twice_weight() const;
  /// Sum delta * r_delta; the order at infinity is this over 24.
  long sum_delta_r() const;
  /// Integrality of the orders at infinity and at 0, divisors of the level.
  bool is_valid() const;
  std::string to_string() const;
  friend bool operator==(const EtaQuotient&, const EtaQuotient&) = default;
};

/// prod_{n>=1} (1 - q^n) as an exactly known polynomial truncated at prec.
QSeries pentagonal_series(long prec);

/// q^{sum delta r / 24} prod_delta prod_n (1 - q^{delta n})^{r_delta}; the
/// result is known for exponents < prec. Throws on a fractional leading
/// exponent.
QSeries eta_expansion(const EtaQuotient& e, long prec);

/// Order at the cusps of Gamma_0(level), keyed by the cusp denominator d | level
/// (d = level is infinity, d = 1 is 0), in the local uniformizer.
std::map<long, Rational> ligozat_orders(const EtaQuotient& e);

/// Number of cusps with denominator d: phi(gcd(d, N/d)).
long cusp_count(long N, long d);

/// Index of Gamma_0(N) in SL_2(Z).
long gamma0_index(long N);

/// Character d -> ((-1)^k s / d), s = prod delta^{r_delta}, as a primitive
/// Kronecker character of conductor dividing the level; nullopt if it is not
/// a character modulo the level or the weight is not integral.
std::optional<KroneckerChar> eta_character(const EtaQuotient& e);

/// Eta quotient of the given level whose orders at the cusps are exactly
/// `orders` (keyed by cusp denominator), if one exists with integral exponents.
std::optional<EtaQuotient> eta_with_orders(long level, const std::map<long, long>& orders);

/// All holomorphic eta quotients of integral weight w on Gamma_0(level) with
/// a quadratic character modulo the level.
std::vector<EtaQuotient> holomorphic_eta_quotients(long level, long w);

/// Weight-0 quotient with trivial character, a pole only at infinity of
/// minimal order <= max_pole, exponents bounded by max_abs_exponent.
/// Throws std::runtime_error naming the bounds if none exists.
EtaQuotient find_ascent_function(long level, long max_abs_exponent, long max_pole);

/// Holomorphic quotient D with ord_d(D) >= needs[d] at every cusp denominator
/// d, minimizing the weight over [min_weight, max_weight]. Used to clear poles.
std::optional<EtaQuotient> find_pole_divisor(long level, const std::map<long, long>& needs, long min_weight,
                                             long max_weight);

}  // namespace wmf
