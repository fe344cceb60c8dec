#pragma once

// Epsilon-subspaces inside a pool, reduced-form grids {f_m}, and the checks
// that go with them.

#include <map>
#include <string>
#include <vector>

#include "wmf/characters.hpp"
#include "wmf/formgen.hpp"
#include "wmf/qseries.hpp"

namespace wmf {

/// max_pole * mu + sturm_bound(N, k + 12 max_pole) + margin.
long certification_precision(long N, long k, long max_pole, long margin = 10);

/// Basis of the pool span's subspace vanishing at every exponent n < prec that
/// the sign vector disallows, and at every n < -pool.max_pole.
std::vector<QSeries> epsilon_solve(const Pool& pool, const QuadCharacter& chi, const SignVector& eps, long prec);

struct Grid {
  QuadCharacter chi{1};
  int k = 0;
  SignVector eps;
  long max_pole = 0;
  long precision = 0;
  /// order m -> f_m = (1/s(m)) q^m + ...
  std::map<long, QSeries> forms;
  /// Allowed orders in [-max_pole, 0) with no reduced form.
  long ell = 0;
  std::string pool_note;

  std::vector<long> orders() const;
  bool has(long m) const { return forms.count(m) != 0; }
  const QSeries& at(long m) const;
  /// Number of attainable orders > 0, i.e. dim of the cusp part.
  long cusp_dimension() const;
  friend bool operator==(const Grid& a, const Grid& b);
};

/// Full reduced echelon form of the epsilon-solved space, pivots at the
/// attainable leading orders, each scaled to leading coefficient 1/s(m).
Grid reduced_grid(const Pool& pool, const QuadCharacter& chi, const SignVector& eps, long prec);

struct Witness {
  long m = 0;
  long n = 0;
  Rational value;
  std::string note;
};

struct PropertyResult {
  bool pass = true;
  std::vector<Witness> witnesses;
  long checked = 0;
};

/// s(m) a_m(n) integral for every known coefficient.
PropertyResult integrality_check(const Grid& g);
/// Coefficient of q^{m'} in f_m vanishes for attainable m' != m.
PropertyResult echelon_check(const Grid& g);
/// s(m) times the leading coefficient equals 1, and q^m is the valuation.
PropertyResult normalization_check(const Grid& g);
/// Every stored coefficient sits at an allowed exponent.
PropertyResult epsilon_check(const Grid& g);
/// Two grids agree on every coefficient both know (orders must match).
PropertyResult stability_check(const Grid& low, const Grid& high);

}  // namespace wmf
