#include "wmf/arith.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace wmf {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational make_rational(long num, long den) { return make_rational(Integer(num), Integer(den)); }

std::string to_string(const Rational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    return make_rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational: '" + s + "'");
  }
}

bool is_integral(const Rational& x) { return x.get_den() == 1; }

bool divides(const Integer& d, const Rational& x) {
  if (!is_integral(x)) return false;
  if (d == 0) return x == 0;
  return mpz_divisible_p(x.get_num().get_mpz_t(), d.get_mpz_t()) != 0;
}

long gcd(long a, long b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

long lcm(long a, long b) {
  if (a == 0 || b == 0) return 0;
  return std::abs(a / gcd(a, b) * b);
}

namespace {

// Jacobi symbol (a/n) for odd n > 0.
int jacobi(long a, long n) {
  a %= n;
  if (a < 0) a += n;
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      long r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

}  // namespace

int kronecker(long a, long n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -1;
  }
  int twos = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++twos;
  }
  if (twos > 0) {
    if (a % 2 == 0) return 0;
    long r = ((a % 8) + 8) % 8;
    if ((r == 3 || r == 5) && (twos % 2 == 1)) result = -result;
  }
  return result * jacobi(a, n);
}

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

u64 gcd_u(u64 a, u64 b) {
  while (b != 0) {
    u64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

u64 pollard_rho(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1;
    auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = gcd_u(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void factor_into(u64 n, std::map<u64, int>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  u64 d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  // This base set is deterministic for all n < 2^64.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::map<std::uint64_t, int> factorize(long long n) {
  if (n == 0) throw std::invalid_argument("factorize: zero has no factorization");
  u64 m = n < 0 ? static_cast<u64>(-(n + 1)) + 1 : static_cast<u64>(n);
  std::map<u64, int> out;
  for (u64 p = 2; p < 1000 && p * p <= m; ++p) {
    while (m % p == 0) {
      ++out[p];
      m /= p;
    }
  }
  factor_into(m, out);
  return out;
}

std::vector<long> prime_divisors(long n) {
  std::vector<long> ps;
  for (auto [p, e] : factorize(n)) ps.push_back(static_cast<long>(p));
  return ps;
}

std::vector<long> divisors(long n) {
  if (n <= 0) throw std::invalid_argument("divisors: n must be positive");
  std::vector<long> ds{1};
  for (auto [p, e] : factorize(n)) {
    std::size_t cur = ds.size();
    long pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= static_cast<long>(p);
      for (std::size_t j = 0; j < cur; ++j) ds.push_back(ds[j] * pk);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

long euler_phi(long n) {
  long r = n;
  for (long p : prime_divisors(n)) r = r / p * (p - 1);
  return r;
}

long primitive_root(long p) {
  auto qs = prime_divisors(p - 1);
  for (long g = 2; g < p; ++g) {
    bool ok = true;
    for (long q : qs) {
      if (powmod(static_cast<u64>(g), static_cast<u64>((p - 1) / q), static_cast<u64>(p)) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  return 1;  // p == 2
}

int valuation(long n, long p) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// ---------------------------------------------------------------------------
// Cyclotomic numbers

long Cyclotomic::max_order = 8 * 24 * 15;

const std::vector<long>& cyclotomic_polynomial(long m) {
  static std::recursive_mutex mu;
  static std::unordered_map<long, std::vector<long>> cache;
  std::lock_guard<std::recursive_mutex> lock(mu);
  if (auto it = cache.find(m); it != cache.end()) return it->second;

  // x^m - 1 divided by Phi_d for every proper divisor d.
  std::vector<long> poly(m + 1, 0);
  poly[0] = -1;
  poly[m] = 1;
  for (long d : divisors(m)) {
    if (d == m) continue;
    const std::vector<long>& phi_d = cyclotomic_polynomial(d);
    // exact division by the monic phi_d
    std::size_t deg = phi_d.size() - 1;
    std::vector<long> q(poly.size() - deg, 0);
    for (std::size_t i = poly.size() - 1; i + 1 > deg; --i) {
      long c = poly[i];
      q[i - deg] = c;
      for (std::size_t j = 0; j <= deg; ++j) poly[i - deg + j] -= c * phi_d[j];
      if (i == deg) break;
    }
    poly = std::move(q);
  }
  return cache.emplace(m, std::move(poly)).first->second;
}

Cyclotomic::Cyclotomic(long order) : order_(order) {
  if (order <= 0) throw std::invalid_argument("cyclotomic order must be positive");
  if (order > max_order) throw std::overflow_error("cyclotomic order " + std::to_string(order) + " exceeds bound");
  coeffs_.assign(static_cast<std::size_t>(euler_phi(order)), Rational(0));
}

Cyclotomic::Cyclotomic(long order, const Rational& value) : Cyclotomic(order) { coeffs_[0] = value; }

Cyclotomic Cyclotomic::from_full(long order, std::vector<Rational> full) {
  Cyclotomic out(order);
  const auto& phi = cyclotomic_polynomial(order);
  std::size_t deg = phi.size() - 1;
  for (std::size_t i = full.size(); i-- > deg;) {
    if (full[i] == 0) continue;
    Rational c = full[i];
    for (std::size_t j = 0; j <= deg; ++j) {
      if (phi[j] != 0) full[i - deg + j] -= c * phi[j];
    }
  }
  for (std::size_t i = 0; i < deg && i < full.size(); ++i) out.coeffs_[i] = full[i];
  return out;
}

Cyclotomic Cyclotomic::zeta(long order, long power) {
  long e = ((power % order) + order) % order;
  std::vector<Rational> full(static_cast<std::size_t>(order), Rational(0));
  full[static_cast<std::size_t>(e)] = 1;
  return from_full(order, std::move(full));
}

Cyclotomic Cyclotomic::e(long num, long den) {
  if (den < 0) {
    den = -den;
    num = -num;
  }
  long g = gcd(num, den);
  if (g == 0) g = 1;
  return zeta(den / g, num / g);
}

Cyclotomic Cyclotomic::promote(long new_order) const {
  if (new_order == order_) return *this;
  if (new_order % order_ != 0) throw std::invalid_argument("promote: order must be a multiple");
  if (new_order > max_order) throw std::overflow_error("cyclotomic order " + std::to_string(new_order) + " exceeds bound");
  long step = new_order / order_;
  std::vector<Rational> full(static_cast<std::size_t>(new_order), Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) full[i * static_cast<std::size_t>(step)] = coeffs_[i];
  return from_full(new_order, std::move(full));
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  long m = lcm(order_, o.order_);
  Cyclotomic b = o.promote(m);
  if (m != order_) *this = promote(m);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += b.coeffs_[i];
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  long m = lcm(order_, o.order_);
  Cyclotomic a = promote(m);
  Cyclotomic b = o.promote(m);
  std::size_t n = a.coeffs_.size();
  std::vector<Rational> full(2 * n - 1, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b.coeffs_[j] != 0) full[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  *this = from_full(m, std::move(full));
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Rational& c) {
  for (auto& x : coeffs_) x *= c;
  return *this;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  long m = lcm(a.order_, b.order_);
  return a.promote(m).coeffs_ == b.promote(m).coeffs_;
}

Cyclotomic Cyclotomic::conjugate() const {
  std::vector<Rational> full(static_cast<std::size_t>(order_), Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    std::size_t j = i == 0 ? 0 : static_cast<std::size_t>(order_) - i;
    full[j] += coeffs_[i];
  }
  return from_full(order_, std::move(full));
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : coeffs_) {
    if (c != 0) return false;
  }
  return true;
}

bool Cyclotomic::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) return false;
  }
  return true;
}

std::complex<double> Cyclotomic::embed() const {
  std::complex<double> z = 0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(order_);
    z += coeffs_[i].get_d() * std::polar(1.0, angle);
  }
  return z;
}

std::string Cyclotomic::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << wmf::to_string(coeffs_[i]);
    if (i > 0) os << "*z" << order_ << "^" << i;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace wmf
