#include "wmf/operators.hpp"

#include <stdexcept>

#include "wmf/arith.hpp"

namespace wmf {

namespace {

Rational power(long d, int e) {
  Rational b(d);
  if (e < 0) {
    b = 1 / b;
    e = -e;
  }
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

long floor_div(long a, long b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

}  // namespace

QSeries hecke_T(const QSeries& f, const QuadCharacter& chi, int k, long r) {
  if (r < 1) throw std::invalid_argument("Hecke index must be positive");
  if (gcd(r, chi.modulus()) != 1) {
    throw std::invalid_argument("T(" + std::to_string(r) +
                                ") shares a factor with the level; T(p) for p | N does not act on the "
                                "eps-subspaces");
  }
  if (f.is_exact()) throw std::invalid_argument("hecke_T needs a finite precision input");
  const long out_prec = floor_div(f.precision(), r);
  QSeries out(out_prec);
  auto v = f.valuation();
  if (!v) return out;
  // b(n) needs r n / d^2 >= v for some d | r, so n >= v / r when v > 0 and
  // n >= v r otherwise.
  const long lo = *v > 0 ? -floor_div(-*v, r) : *v * r;
  std::vector<long> rdivs = divisors(r);
  for (long n = lo; n < out_prec; ++n) {
    Rational b = 0;
    for (long d : rdivs) {
      if (n % d != 0) continue;
      int c = chi(d);
      if (c == 0) continue;
      long idx = r * n / (d * d);
      if (idx < *v) continue;
      Rational a = f.coeff(idx);
      if (a == 0) continue;
      b += c * power(d, k - 1) * a;
    }
    if (b != 0) out.set(n, b);
  }
  return out;
}

SignVector sign_image(const QuadCharacter& chi, const SignVector& eps, long r) {
  if (gcd(r, chi.modulus()) != 1) throw std::invalid_argument("sign_image needs gcd(r, N) = 1");
  SignVector out;
  for (auto [p, e] : eps) out[p] = e * chi.local(p, r);
  return out;
}

bool in_R0(const QuadCharacter& chi, long r) {
  if (r < 1) return false;
  for (long p : chi.primes()) {
    if (chi.local(p, r) != 1) return false;
  }
  return true;
}

QSeries differential_power(const QSeries& f, int k) {
  if (k > 0) throw std::invalid_argument("D^{1-k} maps weight k to 2-k only for k <= 0");
  QSeries out(f.precision());
  for (const auto& [n, c] : f.terms()) {
    if (n == 0) continue;
    out.set(n, c * power(n, 1 - k));
  }
  return out;
}

}  // namespace wmf
