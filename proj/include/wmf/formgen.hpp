#pragma once

// Spanning sets of modular forms: bases of M_k(Gamma_0(N), psi) assembled
// from Eisenstein series and eta quotients, and pools of weakly holomorphic
// forms with bounded poles obtained by dividing such bases by an eta quotient.

#include <string>
#include <vector>

#include "wmf/characters.hpp"
#include "wmf/eta.hpp"
#include "wmf/qseries.hpp"

namespace wmf {

/// ceil(k mu / 12) + 1, mu the index of Gamma_0(N); k < 0 is clamped to 0.
long sturm_bound(long N, long k);

struct FormBasis {
  long N = 1;
  int k = 0;
  KroneckerChar psi;
  long dimension = 0;
  std::vector<QSeries> forms;
  std::vector<std::string> labels;
};

/// Basis of M_k(Gamma_0(N), psi), k >= 2, to precision prec. Candidates are
/// tried in a fixed order and kept greedily while they raise the rank; the
/// rank of the full candidate list must equal the dimension formula.
FormBasis holomorphic_basis(long N, int k, const KroneckerChar& psi, long prec);

struct Pool {
  long N = 1;
  int k = 0;
  long max_pole = 0;
  long precision = 0;
  /// The quotient divided out; empty exponent map when there are no poles.
  EtaQuotient divisor;
  int holomorphic_weight = 0;
  KroneckerChar holomorphic_char;
  std::vector<QSeries> members;
  std::vector<std::string> labels;
};

/// Pole orders at each cusp denominator d that a form in an eps-subspace with
/// pole order max_pole at infinity can have: ceil(M d^2 / (N gcd(d^2, N))).
std::map<long, long> cusp_pole_bounds(long N, long max_pole);

/// Pool of weight-k forms for character chi, containing every form of the
/// eps-subspaces with pole order <= max_pole at infinity, known below prec.
Pool build_pool(const QuadCharacter& chi, int k, long max_pole, long prec);

}  // namespace wmf
