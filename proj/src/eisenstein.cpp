#include "wmf/eisenstein.hpp"

#include <stdexcept>

#include "wmf/eta.hpp"
#include "wmf/lvalues.hpp"

namespace wmf {

std::string EisensteinSpec::to_string() const {
  return "E" + std::to_string(k) + "[" + std::to_string(psi1.disc) + "," + std::to_string(psi2.disc) +
         "](" + (t == 1 ? std::string("") : std::to_string(t)) + "t)";
}

namespace {

bool parity_ok(const EisensteinSpec& s) {
  int par = (s.psi1.is_even() ? 1 : -1) * (s.psi2.is_even() ? 1 : -1);
  return par == (s.k % 2 == 0 ? 1 : -1);
}

}  // namespace

Rational eisenstein_constant(const EisensteinSpec& s) {
  if (s.k == 1) {
    Rational c = 0;
    if (s.psi1.is_trivial()) c -= gen_bernoulli(1, s.psi2) / 2;
    if (s.psi2.is_trivial()) c -= gen_bernoulli(1, s.psi1) / 2;
    return c;
  }
  if (!s.psi1.is_trivial()) return 0;
  return -gen_bernoulli(s.k, s.psi2) / Rational(2 * s.k);
}

QSeries eisenstein_expansion(const EisensteinSpec& s, long prec) {
  if (s.k < 1) throw std::invalid_argument("Eisenstein weight must be positive");
  if (!parity_ok(s)) throw std::invalid_argument("Eisenstein parity violation: " + s.to_string());
  if (s.t < 1) throw std::invalid_argument("Eisenstein scaling must be positive");
  const bool e2 = s.k == 2 && s.psi1.is_trivial() && s.psi2.is_trivial();
  if (e2 && s.t == 1) throw std::invalid_argument("E_2 alone is not modular");

  // Coefficients of the unscaled series for exponents < inner.
  long inner = (prec + s.t - 1) / s.t;
  std::vector<Integer> a(static_cast<std::size_t>(std::max(inner, 1L)), Integer(0));
  std::vector<Integer> dpow(a.size(), Integer(0));
  for (long d = 1; d < inner; ++d) {
    int c2 = s.psi2(d);
    if (c2 == 0) continue;
    dpow[static_cast<std::size_t>(d)] = ipow(Integer(d), static_cast<unsigned long>(s.k - 1));
    for (long m = 1; m * d < inner; ++m) {
      int c1 = s.psi1(m);
      if (c1 == 0) continue;
      if (c1 * c2 > 0) {
        a[static_cast<std::size_t>(m * d)] += dpow[static_cast<std::size_t>(d)];
      } else {
        a[static_cast<std::size_t>(m * d)] -= dpow[static_cast<std::size_t>(d)];
      }
    }
  }
  QSeries out(prec);
  if (e2) {
    // E_2(tau) - t E_2(t tau) with E_2 = -1/24 + sum sigma(n) q^n.
    if (prec > 0) out.set(0, make_rational(s.t - 1, 24));
    std::vector<Integer> full(static_cast<std::size_t>(std::max(prec, 1L)), Integer(0));
    for (long d = 1; d < prec; ++d) {
      for (long m = d; m < prec; m += d) full[static_cast<std::size_t>(m)] += d;
    }
    for (long n = 1; n < prec; ++n) {
      Integer c = full[static_cast<std::size_t>(n)];
      if (n % s.t == 0) c -= s.t * a[static_cast<std::size_t>(n / s.t)];
      if (c != 0) out.set(n, Rational(c));
    }
    return out;
  }
  if (prec > 0) {
    Rational c0 = eisenstein_constant(s);
    if (c0 != 0) out.set(0, c0);
  }
  for (long n = 1; n < inner; ++n) {
    if (a[static_cast<std::size_t>(n)] != 0) out.set(n * s.t, Rational(a[static_cast<std::size_t>(n)]));
  }
  return out;
}

std::vector<EisensteinSpec> eisenstein_specs(long N, int k, const KroneckerChar& psi) {
  std::vector<EisensteinSpec> out;
  if (k < 1) return out;
  auto discs = fundamental_discriminants_dividing(N);
  for (long d1 : discs) {
    for (long d2 : discs) {
      KroneckerChar a{d1}, b{d2};
      if (N % (a.conductor() * b.conductor()) != 0) continue;
      if (char_product(a, b) != psi) continue;
      EisensteinSpec s{k, a, b, 1};
      if (!parity_ok(s)) continue;
      if (k == 1 && d1 > d2) continue;
      long rest = N / (a.conductor() * b.conductor());
      for (long t : divisors(rest)) {
        if (k == 2 && a.is_trivial() && b.is_trivial() && t == 1) continue;
        s.t = t;
        out.push_back(s);
      }
    }
  }
  return out;
}

namespace {

long conductor_exponent(const KroneckerChar& psi, long p) {
  long f = psi.conductor();
  int e = 0;
  while (f % p == 0) {
    f /= p;
    ++e;
  }
  return e;
}

Rational lambda(long r, long s, long p) {
  if (2 * s > r) return Rational(2 * ipow(Integer(p), static_cast<unsigned long>(r - s)));
  if (r % 2 == 0) {
    long h = r / 2;
    return Rational(ipow(Integer(p), static_cast<unsigned long>(h)) +
                    (h > 0 ? ipow(Integer(p), static_cast<unsigned long>(h - 1)) : Integer(0)));
  }
  return Rational(2 * ipow(Integer(p), static_cast<unsigned long>((r - 1) / 2)));
}

}  // namespace

long dim_cusp_forms(long N, int k, const KroneckerChar& psi) {
  if (k < 2) throw std::invalid_argument("dimension formula needs k >= 2");
  if ((psi.is_even() ? 0 : 1) != k % 2) return 0;
  if (N % psi.conductor() != 0) throw std::invalid_argument("character conductor must divide N");
  Rational d = Rational(k - 1) * Rational(gamma0_index(N)) / 12;
  Rational prod = 1;
  for (long p : prime_divisors(N)) prod *= lambda(valuation(N, p), conductor_exponent(psi, p), p);
  d -= prod / 2;
  Rational g4 = 0, g3 = 0;
  if (k % 4 == 2) g4 = Rational(-1, 4);
  if (k % 4 == 0) g4 = Rational(1, 4);
  if (k % 3 == 2) g3 = Rational(-1, 3);
  if (k % 3 == 0) g3 = Rational(1, 3);
  long s4 = 0, s3 = 0;
  for (long x = 0; x < N || (N == 1 && x == 0); ++x) {
    if ((x * x + 1) % N == 0) s4 += psi(x);
    if ((x * x + x + 1) % N == 0) s3 += psi(x);
    if (N == 1) break;
  }
  d += g4 * s4 + g3 * s3;
  // dim S_k - dim M_{2-k}(psi-bar); the latter is 1 only for k = 2, psi trivial.
  if (k == 2 && psi.is_trivial()) d += 1;
  if (!is_integral(d) || d < 0) throw std::logic_error("dimension formula produced a non-integer");
  return d.get_num().get_si();
}

long dim_eisenstein(long N, int k, const KroneckerChar& psi) {
  return static_cast<long>(eisenstein_specs(N, k, psi).size());
}

long dim_modular_forms(long N, int k, const KroneckerChar& psi) {
  return dim_cusp_forms(N, k, psi) + dim_eisenstein(N, k, psi);
}

}  // namespace wmf
