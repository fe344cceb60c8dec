#pragma once

// Hecke operators T(r), (r, N) = 1, and the differential operator D^{1-k}.

#include "wmf/characters.hpp"
#include "wmf/qseries.hpp"

namespace wmf {

/// f | T(r): b(n) = sum_{d | (r, n)} chi(d) d^{k-1} a(rn/d^2). The output is
/// known for n < floor(P / r). Throws std::invalid_argument when gcd(r, N) > 1,
/// since T(p) for p | N does not act on the eps-subspaces.
QSeries hecke_T(const QSeries& f, const QuadCharacter& chi, int k, long r);

/// eps'_p = eps_p chi_p(r).
SignVector sign_image(const QuadCharacter& chi, const SignVector& eps, long r);

/// chi_p(r) = 1 for every p | N.
bool in_R0(const QuadCharacter& chi, long r);

/// D^{1-k} f = sum n^{1-k} a(n) q^n for k <= 0.
QSeries differential_power(const QSeries& f, int k);

}  // namespace wmf
