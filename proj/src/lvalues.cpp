#include "wmf/lvalues.hpp"

#include <mutex>
#include <stdexcept>
#include <vector>

namespace wmf {

namespace {

std::mutex memo_mutex;
std::vector<Rational> memo{Rational(1)};

Integer binomial(int n, int k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

}  // namespace

Rational bernoulli(int k) {
  if (k < 0) throw std::invalid_argument("bernoulli: negative index");
  std::lock_guard<std::mutex> lock(memo_mutex);
  // sum_{j<=m} C(m+1, j) B_j = 0
  while (static_cast<int>(memo.size()) <= k) {
    int m = static_cast<int>(memo.size());
    Rational s = 0;
    for (int j = 0; j < m; ++j) s += Rational(binomial(m + 1, j)) * memo[static_cast<std::size_t>(j)];
    memo.push_back(-s / Rational(m + 1));
  }
  return memo[static_cast<std::size_t>(k)];
}

Rational bernoulli_poly(int k, const Rational& x) {
  Rational r = 0;
  Rational xp = 1;
  // B_k(x) = sum_j C(k,j) B_{k-j} x^j
  for (int j = 0; j <= k; ++j) {
    r += Rational(binomial(k, j)) * bernoulli(k - j) * xp;
    xp *= x;
  }
  return r;
}

Rational gen_bernoulli(int k, const KroneckerChar& chi) {
  if (k < 1) throw std::invalid_argument("gen_bernoulli: k >= 1 required");
  if (chi.is_trivial()) {
    // B_{1,1} = +1/2 in the character convention.
    return k == 1 ? Rational(1, 2) : bernoulli(k);
  }
  if ((chi.is_even() ? 1 : -1) != (k % 2 == 0 ? 1 : -1)) return 0;
  long f = chi.conductor();
  Rational s = 0;
  for (long a = 1; a <= f; ++a) {
    int c = chi(a);
    if (c != 0) s += c * bernoulli_poly(k, make_rational(a, f));
  }
  return s * Rational(ipow(Integer(f), static_cast<unsigned long>(k - 1)));
}

LValue l_value_neg(int k, const KroneckerChar& chi) {
  if (k < 2) throw std::invalid_argument("l_value_neg: k >= 2 required");
  LValue v;
  v.k = k;
  v.chi = chi;
  v.value = -gen_bernoulli(k, chi) / Rational(k);
  v.denominator = v.value.get_den();
  return v;
}

std::optional<Integer> carlitz_denominator_prediction(long N, int k, const KroneckerChar& chi) {
  if (N == 4) {
    if (k % 2 == 1) return Integer(2);
    return std::nullopt;
  }
  if (N <= 2 || !is_prime(static_cast<std::uint64_t>(N))) return std::nullopt;
  long p = N;
  long t = primitive_root(p);
  // 1 - chi(t) t^k mod p
  Integer tk;
  mpz_powm_ui(tk.get_mpz_t(), Integer(t).get_mpz_t(), static_cast<unsigned long>(k), Integer(p).get_mpz_t());
  Integer val = 1 - chi(t) * tk;
  if (mpz_divisible_ui_p(val.get_mpz_t(), static_cast<unsigned long>(p)) == 0) return std::nullopt;
  int nu = valuation(k, p);
  return ipow(Integer(p), static_cast<unsigned long>(nu + 1));
}

Integer staudt_clausen_divisor(int k) {
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("staudt_clausen_divisor: even k >= 2 required");
  Rational x = bernoulli(k) / Rational(2 * k);
  return x.get_den();
}

}  // namespace wmf
