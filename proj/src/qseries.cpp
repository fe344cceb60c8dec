#include "wmf/qseries.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace wmf {

namespace {

// An exact precision absorbs any finite shift.
long sat_add(long a, long b) {
  if (a >= QSeries::kExact) return QSeries::kExact;
  long s = a + b;
  return std::min(s, QSeries::kExact);
}

// Integer numerators over a common denominator for exponents [lo, hi).
struct IntBlock {
  long lo = 0;
  std::vector<Integer> num;
  Integer den = 1;
};

IntBlock to_int_block(const QSeries& f, long lo, long hi) {
  IntBlock b;
  b.lo = lo;
  if (hi <= lo) return b;
  b.num.assign(static_cast<std::size_t>(hi - lo), Integer(0));
  for (auto it = f.terms().lower_bound(lo); it != f.terms().end() && it->first < hi; ++it) {
    mpz_lcm(b.den.get_mpz_t(), b.den.get_mpz_t(), it->second.get_den_mpz_t());
  }
  for (auto it = f.terms().lower_bound(lo); it != f.terms().end() && it->first < hi; ++it) {
    Integer scale = b.den / it->second.get_den();
    b.num[static_cast<std::size_t>(it->first - lo)] = it->second.get_num() * scale;
  }
  return b;
}

}  // namespace

QSeries QSeries::monomial(const Rational& c, long exponent, long precision) {
  QSeries f(precision);
  if (exponent < precision && c != 0) f.coeffs_[exponent] = c;
  return f;
}

QSeries QSeries::from_dense(long start, const std::vector<Rational>& coeffs, long precision) {
  QSeries f(precision);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    long n = start + static_cast<long>(i);
    if (n >= precision) break;
    if (coeffs[i] != 0) f.coeffs_[n] = coeffs[i];
  }
  return f;
}

Rational QSeries::coeff(long n) const {
  if (n >= precision_) {
    throw std::out_of_range("coefficient of q^" + std::to_string(n) + " unknown (precision " +
                            std::to_string(precision_) + ")");
  }
  auto it = coeffs_.find(n);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

void QSeries::set(long n, const Rational& c) {
  if (n >= precision_) throw std::out_of_range("set: exponent beyond precision");
  if (c == 0) {
    coeffs_.erase(n);
  } else {
    coeffs_[n] = c;
  }
}

std::optional<long> QSeries::valuation() const {
  if (coeffs_.empty()) return std::nullopt;
  return coeffs_.begin()->first;
}

QSeries QSeries::truncated(long p) const {
  QSeries f(std::min(p, precision_));
  for (const auto& [n, c] : coeffs_) {
    if (n >= f.precision_) break;
    f.coeffs_.emplace(n, c);
  }
  return f;
}

QSeries QSeries::operator-() const {
  QSeries f = *this;
  for (auto& [n, c] : f.coeffs_) c = -c;
  return f;
}

QSeries& QSeries::operator+=(const QSeries& o) {
  long p = std::min(precision_, o.precision_);
  if (p < precision_) *this = truncated(p);
  for (const auto& [n, c] : o.coeffs_) {
    if (n >= p) break;
    auto [it, inserted] = coeffs_.emplace(n, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) coeffs_.erase(it);
    }
  }
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) { return *this += -o; }

QSeries& QSeries::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [n, x] : coeffs_) x *= c;
  return *this;
}

bool QSeries::agrees_with(const QSeries& o) const {
  long p = std::min(precision_, o.precision_);
  return truncated(p).coeffs_ == o.truncated(p).coeffs_;
}

QSeries QSeries::dilate(long t) const {
  if (t < 1) throw std::invalid_argument("dilate: t must be positive");
  QSeries f(is_exact() ? kExact : std::min(kExact, precision_ * t));
  for (const auto& [n, c] : coeffs_) f.coeffs_.emplace(n * t, c);
  return f;
}

QSeries QSeries::shifted(long s) const {
  QSeries f(is_exact() ? kExact : sat_add(precision_, s));
  for (const auto& [n, c] : coeffs_) f.coeffs_.emplace(n + s, c);
  return f;
}

std::vector<Rational> QSeries::dense(long from, long to) const {
  if (to > precision_) throw std::out_of_range("dense: range exceeds precision");
  std::vector<Rational> out(static_cast<std::size_t>(std::max(0L, to - from)), Rational(0));
  for (auto it = coeffs_.lower_bound(from); it != coeffs_.end() && it->first < to; ++it) {
    out[static_cast<std::size_t>(it->first - from)] = it->second;
  }
  return out;
}

QSeries operator*(const QSeries& f, const QSeries& g) {
  // A vanishing factor is treated as having valuation equal to its precision.
  long vf = f.valuation().value_or(f.precision());
  long vg = g.valuation().value_or(g.precision());
  long prec = std::min(sat_add(f.precision(), vg), sat_add(g.precision(), vf));
  QSeries out(prec);
  if (f.is_zero() || g.is_zero()) return out;

  long f_hi = std::min(f.precision(), prec == QSeries::kExact ? f.terms().rbegin()->first + 1 : prec - vg);
  long g_hi = std::min(g.precision(), prec == QSeries::kExact ? g.terms().rbegin()->first + 1 : prec - vf);
  f_hi = std::min(f_hi, f.terms().rbegin()->first + 1);
  g_hi = std::min(g_hi, g.terms().rbegin()->first + 1);
  IntBlock a = to_int_block(f, vf, f_hi);
  IntBlock b = to_int_block(g, vg, g_hi);

  long top = prec == QSeries::kExact ? f_hi + g_hi - 1 : prec;
  std::vector<Integer> acc(static_cast<std::size_t>(top - vf - vg), Integer(0));
  for (std::size_t i = 0; i < a.num.size(); ++i) {
    if (a.num[i] == 0) continue;
    std::size_t limit = std::min(b.num.size(), acc.size() - i);
    for (std::size_t j = 0; j < limit; ++j) {
      if (b.num[j] != 0) mpz_addmul(acc[i + j].get_mpz_t(), a.num[i].get_mpz_t(), b.num[j].get_mpz_t());
    }
  }
  Integer den = a.den * b.den;
  for (std::size_t k = 0; k < acc.size(); ++k) {
    if (acc[k] != 0) out.set(vf + vg + static_cast<long>(k), make_rational(acc[k], den));
  }
  return out;
}

QSeries series_add(const QSeries& f, const QSeries& g) { return f + g; }
QSeries series_mul(const QSeries& f, const QSeries& g) { return f * g; }

QSeries series_unit_pow(const QSeries& u, const Rational& alpha, std::optional<long> cap) {
  if (u.coeff(0) != 1 || (u.valuation() && *u.valuation() < 0)) {
    throw std::invalid_argument("series_unit_pow: constant term must be 1 with no pole");
  }
  long prec = u.precision();
  if (u.is_exact()) {
    if (!cap) throw std::invalid_argument("series_unit_pow: exact input needs a precision cap");
    prec = *cap;
  } else if (cap) {
    prec = std::min(prec, *cap);
  }
  if (prec <= 0) return QSeries(prec);

  const std::size_t n_max = static_cast<std::size_t>(prec);
  std::vector<std::pair<std::size_t, Rational>> terms;
  for (const auto& [n, c] : u.terms()) {
    if (n > 0 && n < prec) terms.emplace_back(static_cast<std::size_t>(n), c);
  }

  bool integral = is_integral(alpha);
  for (const auto& t : terms) integral = integral && is_integral(t.second);

  std::vector<Rational> out(n_max, Rational(0));
  out[0] = 1;
  if (integral) {
    // All intermediate values are integers; the division by n is exact.
    Integer a = alpha.get_num();
    std::vector<Integer> b(n_max, Integer(0));
    b[0] = 1;
    Integer acc, w;
    for (std::size_t n = 1; n < n_max; ++n) {
      acc = 0;
      for (const auto& [k, c] : terms) {
        if (k > n) break;
        if (b[n - k] == 0) continue;
        w = (a + 1) * static_cast<long>(k) - static_cast<long>(n);
        w *= c.get_num();
        mpz_addmul(acc.get_mpz_t(), w.get_mpz_t(), b[n - k].get_mpz_t());
      }
      mpz_divexact_ui(b[n].get_mpz_t(), acc.get_mpz_t(), n);
    }
    for (std::size_t n = 0; n < n_max; ++n) out[n] = Rational(b[n]);
  } else {
    for (std::size_t n = 1; n < n_max; ++n) {
      Rational acc = 0;
      for (const auto& [k, c] : terms) {
        if (k > n) break;
        if (out[n - k] == 0) continue;
        acc += ((alpha + 1) * static_cast<long>(k) - static_cast<long>(n)) * c * out[n - k];
      }
      out[n] = acc / static_cast<long>(n);
    }
  }
  return QSeries::from_dense(0, out, prec);
}

namespace {

// f = c q^v u with u(0) = 1.
struct Normalized {
  Rational lead;
  long val;
  QSeries unit;
};

Normalized normalize(const QSeries& f) {
  auto v = f.valuation();
  if (!v) throw std::domain_error("series is zero to its precision");
  Rational c = f.coeff(*v);
  QSeries u = f.shifted(-*v) * (1 / c);
  return {c, *v, std::move(u)};
}

}  // namespace

QSeries series_invert(const QSeries& f, std::optional<long> cap) {
  return series_pow(f, -1, cap);
}

QSeries series_pow(const QSeries& f, long e, std::optional<long> cap) {
  if (e == 0) return QSeries::constant(1, f.is_exact() ? QSeries::kExact : f.precision() - 2 * f.valuation().value_or(0));
  auto [c, v, u] = normalize(f);
  Rational ce = 1;
  Rational base = e > 0 ? c : 1 / c;
  for (long i = 0; i < std::abs(e); ++i) ce *= base;

  if (u.is_exact() && u.terms().size() == 1) return QSeries::monomial(ce, v * e);
  if (u.is_exact() && e > 0) {
    QSeries r = QSeries::constant(1);
    QSeries b = u;
    for (long k = e; k > 0; k >>= 1) {
      if (k & 1) r = r * b;
      if (k > 1) b = b * b;
    }
    return r.shifted(v * e) * ce;
  }
  std::optional<long> ucap;
  if (u.is_exact()) {
    if (!cap) throw std::invalid_argument("series_pow: exact non-monomial input needs a precision cap");
    ucap = *cap - v * e;
  }
  QSeries w = series_unit_pow(u, Rational(e), ucap);
  return w.shifted(v * e) * ce;
}

nlohmann::json to_json(const QSeries& f) {
  nlohmann::json j;
  auto v = f.valuation();
  j["valuation"] = v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  j["precision"] = f.is_exact() ? nlohmann::json(nullptr) : nlohmann::json(f.precision());
  nlohmann::json c = nlohmann::json::object();
  for (const auto& [n, x] : f.terms()) c[std::to_string(n)] = to_string(x);
  j["coeffs"] = std::move(c);
  return j;
}

QSeries series_from_json(const nlohmann::json& j) {
  long prec = j.at("precision").is_null() ? QSeries::kExact : j.at("precision").get<long>();
  QSeries f(prec);
  for (const auto& [k, v] : j.at("coeffs").items()) f.set(std::stol(k), parse_rational(v.get<std::string>()));
  if (!j.at("valuation").is_null()) {
    auto v = f.valuation();
    if (!v || *v != j.at("valuation").get<long>()) throw std::runtime_error("series JSON: valuation mismatch");
  } else if (!f.is_zero()) {
    throw std::runtime_error("series JSON: valuation mismatch");
  }
  return f;
}

std::string to_display(const QSeries& f, long max_terms) {
  std::ostringstream os;
  long shown = 0;
  for (const auto& [n, c] : f.terms()) {
    if (shown == max_terms) {
      os << " + ...";
      break;
    }
    Rational a = abs(c);
    if (shown == 0) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    bool unit = a == 1;
    if (!unit || n == 0) os << to_string(a);
    if (n != 0) {
      os << "q";
      if (n != 1) os << "^" << n;
    }
    ++shown;
  }
  if (shown == 0) os << "0";
  if (!f.is_exact()) os << " + O(q^" << f.precision() << ")";
  return os.str();
}

}  // namespace wmf
