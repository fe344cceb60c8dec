#include "wmf/eta.hpp"

#include <cstdlib>
#include <functional>
#include <mutex>
#include <stdexcept>

#include "wmf/linalg.hpp"

namespace wmf {

long EtaQuotient::twice_weight() const {
  long s = 0;
  for (auto [d, e] : r) s += e;
  return s;
}

long EtaQuotient::sum_delta_r() const {
  long s = 0;
  for (auto [d, e] : r) s += d * e;
  return s;
}

bool EtaQuotient::is_valid() const {
  long at_zero = 0;
  for (auto [d, e] : r) {
    if (d < 1 || level % d != 0) return false;
    at_zero += (level / d) * e;
  }
  return sum_delta_r() % 24 == 0 && at_zero % 24 == 0;
}

std::string EtaQuotient::to_string() const {
  std::string s;
  for (auto [d, e] : r) {
    if (e == 0) continue;
    if (!s.empty()) s += " ";
    s += "eta(" + (d == 1 ? std::string("") : std::to_string(d)) + "t)^" + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

QSeries pentagonal_series(long prec) {
  QSeries p(prec);
  if (prec <= 0) return p;
  p.set(0, 1);
  for (long k = 1;; ++k) {
    long a = k * (3 * k - 1) / 2;
    long b = k * (3 * k + 1) / 2;
    if (a >= prec) break;
    Rational sign = k % 2 == 0 ? 1 : -1;
    p.set(a, sign);
    if (b < prec) p.set(b, sign);
  }
  return p;
}

QSeries eta_expansion(const EtaQuotient& e, long prec) {
  long s = e.sum_delta_r();
  if (s % 24 != 0) throw std::invalid_argument("eta quotient has a fractional leading exponent: " + e.to_string());
  long v = s / 24;
  long cap = prec - v;
  if (cap <= 0) return QSeries(prec);
  QSeries unit = QSeries::constant(1, cap);
  for (auto [d, x] : e.r) {
    if (x == 0) continue;
    long inner = (cap + d - 1) / d;
    QSeries pd = pentagonal_series(inner).dilate(d).truncated(cap);
    unit = unit * series_unit_pow(pd, Rational(x));
  }
  return unit.shifted(v);
}

long gamma0_index(long N) {
  long mu = N;
  for (long p : prime_divisors(N)) mu = mu / p * (p + 1);
  return mu;
}

long cusp_count(long N, long d) { return euler_phi(gcd(d, N / d)); }

std::map<long, Rational> ligozat_orders(const EtaQuotient& e) {
  const long N = e.level;
  std::map<long, Rational> out;
  for (long d : divisors(N)) {
    Rational s = 0;
    for (auto [delta, x] : e.r) {
      long g = gcd(d, delta);
      s += make_rational(g * g * x, gcd(d, N / d) * d * delta);
    }
    out[d] = s * make_rational(N, 24);
  }
  return out;
}

std::optional<KroneckerChar> eta_character(const EtaQuotient& e) {
  long tw = e.twice_weight();
  if (tw % 2 != 0) return std::nullopt;
  long k = tw / 2;
  long s = 1;
  for (auto [d, x] : e.r) {
    if (x % 2 != 0) s *= d;
  }
  long d0 = (k % 2 == 0 ? 1 : -1) * s;
  long sign = d0 < 0 ? -1 : 1;
  long core = 1;
  for (auto [p, m] : factorize(d0)) {
    if (m % 2 == 1) core *= static_cast<long>(p);
  }
  long disc = sign * core;
  if (((disc % 4) + 4) % 4 != 1) disc *= 4;
  KroneckerChar chi{disc};
  if (e.level % chi.conductor() != 0) return std::nullopt;
  for (long n = 1; n <= 4 * e.level; ++n) {
    if (gcd(n, e.level) != 1) continue;
    if (kronecker(d0, n) != chi(n)) return std::nullopt;
  }
  return chi;
}

namespace {

struct LigozatInverse {
  std::vector<long> divs;
  RatMatrix inv;  // r = inv * orders
};

const LigozatInverse& ligozat_inverse(long N) {
  static std::mutex mu;
  static std::map<long, LigozatInverse> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(N);
  if (it != cache.end()) return it->second;
  LigozatInverse li;
  li.divs = divisors(N);
  std::size_t n = li.divs.size();
  // Augmented [L | I] reduced to [I | L^{-1}].
  RatMatrix aug(n, std::vector<Rational>(2 * n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    long d = li.divs[i];
    for (std::size_t j = 0; j < n; ++j) {
      long delta = li.divs[j];
      long g = gcd(d, delta);
      aug[i][j] = make_rational(N * g * g, 24 * gcd(d, N / d) * d * delta);
    }
    aug[i][n + i] = 1;
  }
  auto piv = rref(aug);
  if (piv.size() != n || piv.back() != n - 1) throw std::logic_error("Ligozat matrix is singular");
  li.inv.assign(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) li.inv[i][j] = aug[i][n + j];
  }
  return cache.emplace(N, std::move(li)).first->second;
}

// Calls visit(v) for every vector v >= lower with sum_i cost_i v_i = total.
void for_each_order_vector(const std::vector<long>& cost, const std::vector<long>& lower, long total,
                           const std::function<void(const std::vector<long>&)>& visit) {
  std::vector<long> v = lower;
  long base = 0;
  for (std::size_t i = 0; i < cost.size(); ++i) base += cost[i] * lower[i];
  if (base > total) return;
  std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
    if (i + 1 == cost.size()) {
      if (left % cost[i] == 0) {
        v[i] = lower[i] + left / cost[i];
        visit(v);
      }
      return;
    }
    for (long extra = 0; extra * cost[i] <= left; ++extra) {
      v[i] = lower[i] + extra;
      rec(i + 1, left - extra * cost[i]);
    }
  };
  rec(0, total - base);
}

}  // namespace

std::optional<EtaQuotient> eta_with_orders(long level, const std::map<long, long>& orders) {
  const auto& li = ligozat_inverse(level);
  EtaQuotient e;
  e.level = level;
  for (std::size_t i = 0; i < li.divs.size(); ++i) {
    Rational x = 0;
    for (std::size_t j = 0; j < li.divs.size(); ++j) {
      auto it = orders.find(li.divs[j]);
      if (it == orders.end()) throw std::invalid_argument("eta_with_orders: missing cusp");
      x += li.inv[i][j] * it->second;
    }
    if (!is_integral(x)) return std::nullopt;
    long xi = x.get_num().get_si();
    if (xi != 0) e.r[li.divs[i]] = xi;
  }
  if (!e.is_valid()) return std::nullopt;
  return e;
}

std::vector<EtaQuotient> holomorphic_eta_quotients(long level, long w) {
  std::vector<EtaQuotient> out;
  long mu = gamma0_index(level);
  if ((w * mu) % 12 != 0 || w < 0) return out;
  const auto& divs = ligozat_inverse(level).divs;
  std::vector<long> cost;
  for (long d : divs) cost.push_back(cusp_count(level, d));
  std::vector<long> lower(divs.size(), 0);
  for_each_order_vector(cost, lower, w * mu / 12, [&](const std::vector<long>& v) {
    std::map<long, long> ord;
    for (std::size_t i = 0; i < divs.size(); ++i) ord[divs[i]] = v[i];
    auto e = eta_with_orders(level, ord);
    if (e && e->twice_weight() == 2 * w && eta_character(*e)) out.push_back(*e);
  });
  return out;
}

EtaQuotient find_ascent_function(long level, long max_abs_exponent, long max_pole) {
  const auto& divs = ligozat_inverse(level).divs;
  std::vector<long> cost;
  std::vector<long> others;
  for (long d : divs) {
    if (d == level) continue;
    others.push_back(d);
    cost.push_back(cusp_count(level, d));
  }
  for (long j = 1; j <= max_pole; ++j) {
    std::optional<EtaQuotient> found;
    if (others.empty()) break;
    for_each_order_vector(cost, std::vector<long>(others.size(), 0), j, [&](const std::vector<long>& v) {
      if (found) return;
      std::map<long, long> ord{{level, -j}};
      for (std::size_t i = 0; i < others.size(); ++i) ord[others[i]] = v[i];
      auto e = eta_with_orders(level, ord);
      if (!e || e->twice_weight() != 0) return;
      for (auto [d, x] : e->r) {
        if (std::labs(x) > max_abs_exponent) return;
      }
      auto chi = eta_character(*e);
      if (chi && chi->is_trivial()) found = e;
    });
    if (found) return *found;
  }
  throw std::runtime_error("no ascent function on Gamma_0(" + std::to_string(level) + ") with pole order <= " +
                           std::to_string(max_pole) + " and exponents bounded by " +
                           std::to_string(max_abs_exponent));
}

std::optional<EtaQuotient> find_pole_divisor(long level, const std::map<long, long>& needs, long min_weight,
                                             long max_weight) {
  const auto& divs = ligozat_inverse(level).divs;
  std::vector<long> cost;
  std::vector<long> lower;
  for (long d : divs) {
    cost.push_back(cusp_count(level, d));
    auto it = needs.find(d);
    lower.push_back(it == needs.end() ? 0 : std::max(0L, it->second));
  }
  long mu = gamma0_index(level);
  for (long w = std::max(0L, min_weight); w <= max_weight; ++w) {
    if ((w * mu) % 12 != 0) continue;
    std::optional<EtaQuotient> best;
    long best_size = 0;
    for_each_order_vector(cost, lower, w * mu / 12, [&](const std::vector<long>& v) {
      std::map<long, long> ord;
      for (std::size_t i = 0; i < divs.size(); ++i) ord[divs[i]] = v[i];
      auto e = eta_with_orders(level, ord);
      if (!e || e->twice_weight() != 2 * w || !eta_character(*e)) return;
      long size = 0;
      for (auto [d, x] : e->r) size += std::labs(x);
      if (!best || size < best_size) {
        best = e;
        best_size = size;
      }
    });
    if (best) return best;
  }
  return std::nullopt;
}

}  // namespace wmf
