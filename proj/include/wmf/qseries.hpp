#pragma once

// Sparse Laurent series in q over the rationals with absolute precision:
// coefficients are known exactly for every exponent n < precision().

#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "json.hpp"

#include "wmf/arith.hpp"

namespace wmf {

class QSeries {
 public:
  /// Precision of an exactly known (finite) Laurent polynomial.
  static constexpr long kExact = std::numeric_limits<long>::max() / 4;

  QSeries() : precision_(kExact) {}
  explicit QSeries(long precision) : precision_(precision) {}

  static QSeries monomial(const Rational& c, long exponent, long precision = kExact);
  static QSeries constant(const Rational& c, long precision = kExact) { return monomial(c, 0, precision); }
  /// Builds a series from dense coefficients starting at exponent `start`.
  static QSeries from_dense(long start, const std::vector<Rational>& coeffs, long precision);

  long precision() const { return precision_; }
  bool is_exact() const { return precision_ >= kExact; }

  /// Coefficient of q^n; throws std::out_of_range when n >= precision.
  Rational coeff(long n) const;
  /// Sets the coefficient (pruning zeros); n must lie below the precision.
  void set(long n, const Rational& c);

  /// Smallest exponent with a nonzero known coefficient, or nullopt if the
  /// series vanishes to its precision.
  std::optional<long> valuation() const;
  bool is_zero() const { return coeffs_.empty(); }
  const std::map<long, Rational>& terms() const { return coeffs_; }

  /// Drops every coefficient at exponent >= p and lowers the precision to p.
  QSeries truncated(long p) const;

  QSeries operator-() const;
  QSeries& operator+=(const QSeries& o);
  QSeries& operator-=(const QSeries& o);
  QSeries& operator*=(const Rational& c);
  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  friend QSeries operator*(QSeries a, const Rational& c) { return a *= c; }
  friend QSeries operator*(const Rational& c, QSeries a) { return a *= c; }
  friend QSeries operator*(const QSeries& a, const QSeries& b);

  /// Exact equality of terms and precision.
  friend bool operator==(const QSeries& a, const QSeries& b) = default;

  /// True if both agree on every exponent below min(precisions).
  bool agrees_with(const QSeries& o) const;

  /// f(q^t), t >= 1.
  QSeries dilate(long t) const;
  /// q^s * f.
  QSeries shifted(long s) const;

  /// Number of exponents n < precision; for exact series, throws.
  std::vector<Rational> dense(long from, long to) const;

 private:
  std::map<long, Rational> coeffs_;
  long precision_;
};

QSeries series_add(const QSeries& f, const QSeries& g);
QSeries series_mul(const QSeries& f, const QSeries& g);

/// Multiplicative inverse. For an exact, non-monomial input the expansion is
/// cut at `cap` (required in that case). The precision of the result is
/// P_f - 2 val_f.
QSeries series_invert(const QSeries& f, std::optional<long> cap = std::nullopt);

/// f^e for integral e; negative exponents go through series_invert.
QSeries series_pow(const QSeries& f, long e, std::optional<long> cap = std::nullopt);

/// u^alpha for a series with constant term 1 (no pole), via the power
/// recurrence n b_n = sum_k ((alpha+1)k - n) u_k b_{n-k}. Output precision
/// equals the input precision (or cap for exact input).
QSeries series_unit_pow(const QSeries& u, const Rational& alpha, std::optional<long> cap = std::nullopt);

/// JSON form {"valuation": v|null, "precision": P|null, "coeffs": {"n": "a/b"}}.
nlohmann::json to_json(const QSeries& f);
QSeries series_from_json(const nlohmann::json& j);

/// Human readable "1/2q^-2 - 4q + ... + O(q^P)".
std::string to_display(const QSeries& f, long max_terms = 40);

}  // namespace wmf
