#pragma once

// The two-character Eisenstein family E_k^{psi1,psi2}(t tau) and dimension
// formulas for M_k(Gamma_0(N), psi).

#include <string>
#include <vector>

#include "wmf/characters.hpp"
#include "wmf/qseries.hpp"

namespace wmf {

struct EisensteinSpec {
  int k = 2;
  KroneckerChar psi1;
  KroneckerChar psi2;
  long t = 1;

  std::string to_string() const;
};

/// c_0 + sum_{n>=1} (sum_{d|n} psi1(n/d) psi2(d) d^{k-1}) q^{tn}; for k = 2 and
/// both characters trivial this is E_2(tau) - t E_2(t tau) (t > 1).
/// Throws on a parity violation.
QSeries eisenstein_expansion(const EisensteinSpec& spec, long prec);

/// The constant term c_0 of the series at t = 1.
Rational eisenstein_constant(const EisensteinSpec& spec);

/// A basis of the Eisenstein subspace of M_k(Gamma_0(N), psi): all triples
/// with psi1 psi2 = psi, cond(psi1) cond(psi2) t | N, in a fixed order.
std::vector<EisensteinSpec> eisenstein_specs(long N, int k, const KroneckerChar& psi);

/// dim S_k(Gamma_0(N), psi) for k >= 2 (Cohen-Oesterle).
long dim_cusp_forms(long N, int k, const KroneckerChar& psi);
long dim_eisenstein(long N, int k, const KroneckerChar& psi);
long dim_modular_forms(long N, int k, const KroneckerChar& psi);

}  // namespace wmf
