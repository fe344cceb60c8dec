#include "wmf/reduced.hpp"

#include <algorithm>
#include <stdexcept>

#include "wmf/eta.hpp"
#include "wmf/linalg.hpp"

namespace wmf {

long certification_precision(long N, long k, long max_pole, long margin) {
  return max_pole * gamma0_index(N) + sturm_bound(N, k + 12 * max_pole) + margin;
}

namespace {

QSeries combine(const std::vector<QSeries>& members, const std::vector<Rational>& x, long prec) {
  QSeries g(prec);
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (x[i] != 0) g += members[i].truncated(prec) * x[i];
  }
  return g;
}

}  // namespace

std::vector<QSeries> epsilon_solve(const Pool& pool, const QuadCharacter& chi, const SignVector& eps, long prec) {
  if (prec > pool.precision) throw std::invalid_argument("epsilon_solve: pool precision too small");
  const auto& F = pool.members;
  const std::size_t m = F.size();
  if (m == 0) return {};

  long lo = prec;
  for (const auto& f : F) {
    if (auto v = f.valuation()) lo = std::min(lo, *v);
  }
  std::vector<long> constrained;
  for (long n = lo; n < prec; ++n) {
    if (n < -pool.max_pole || !epsilon_allows(chi, eps, n)) constrained.push_back(n);
  }
  auto row_at = [&](long n) {
    std::vector<Rational> row(m);
    for (std::size_t i = 0; i < m; ++i) row[i] = F[i].coeff(n);
    return row;
  };

  // Pick rows that are independent mod p, solve exactly on those, then verify
  // the full constraint set exactly.
  RatMatrix selected;
  bool modp_ok = true;
  ModpEchelon ech(m);
  for (long n : constrained) {
    auto row = row_at(n);
    std::vector<std::uint64_t> v(m);
    for (std::size_t i = 0; i < m && modp_ok; ++i) {
      auto r = modp::reduce(row[i]);
      if (!r) modp_ok = false;
      else v[i] = *r;
    }
    if (!modp_ok) break;
    if (ech.add(std::move(v))) selected.push_back(std::move(row));
    if (ech.rank() == m) break;
  }

  auto solve_from = [&](const RatMatrix& rows) {
    std::vector<QSeries> out;
    for (const auto& x : nullspace(rows, m)) out.push_back(combine(F, x, prec));
    return out;
  };
  auto verified = [&](const std::vector<QSeries>& sols) {
    for (const auto& g : sols) {
      for (long n : constrained) {
        if (g.coeff(n) != 0) return false;
      }
    }
    return true;
  };

  if (modp_ok) {
    auto sols = solve_from(selected);
    if (verified(sols)) return sols;
  }
  RatMatrix all;
  for (long n : constrained) all.push_back(row_at(n));
  auto sols = solve_from(all);
  if (!verified(sols)) throw std::logic_error("epsilon_solve: exact elimination failed verification");
  return sols;
}

std::vector<long> Grid::orders() const {
  std::vector<long> out;
  for (const auto& [m, f] : forms) out.push_back(m);
  return out;
}

const QSeries& Grid::at(long m) const {
  auto it = forms.find(m);
  if (it == forms.end()) throw std::out_of_range("grid has no reduced form of order " + std::to_string(m));
  return it->second;
}

long Grid::cusp_dimension() const {
  return static_cast<long>(std::count_if(forms.begin(), forms.end(), [](const auto& kv) { return kv.first > 0; }));
}

bool operator==(const Grid& a, const Grid& b) {
  return a.chi == b.chi && a.k == b.k && a.eps == b.eps && a.max_pole == b.max_pole && a.precision == b.precision &&
         a.forms == b.forms && a.ell == b.ell && a.pool_note == b.pool_note;
}

Grid reduced_grid(const Pool& pool, const QuadCharacter& chi, const SignVector& eps, long prec) {
  Grid g;
  g.chi = chi;
  g.k = pool.k;
  g.eps = eps;
  g.max_pole = pool.max_pole;
  g.precision = prec;
  g.pool_note = "weight " + std::to_string(pool.holomorphic_weight) + " forms, character " +
                std::to_string(pool.holomorphic_char.disc) + ", divided by " + pool.divisor.to_string();
  const long N = chi.modulus();

  auto basis = epsilon_solve(pool, chi, eps, prec);
  std::vector<long> cols;
  for (long n = -pool.max_pole; n < prec; ++n) {
    if (epsilon_allows(chi, eps, n)) cols.push_back(n);
  }
  RatMatrix mat;
  for (const auto& f : basis) {
    std::vector<Rational> row(cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) row[j] = f.coeff(cols[j]);
    mat.push_back(std::move(row));
  }
  auto pivots = rref(mat);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    long m = cols[pivots[i]];
    QSeries f(prec);
    Rational scale = make_rational(1, s_factor(m, N));
    for (std::size_t j = pivots[i]; j < cols.size(); ++j) {
      if (mat[i][j] != 0) f.set(cols[j], mat[i][j] * scale);
    }
    g.forms.emplace(m, std::move(f));
  }
  for (long n = -pool.max_pole; n < 0; ++n) {
    if (epsilon_allows(chi, eps, n) && !g.has(n)) ++g.ell;
  }
  return g;
}

namespace {

void add_witness(PropertyResult& r, long m, long n, const Rational& v, const std::string& note) {
  r.pass = false;
  if (r.witnesses.size() < 20) r.witnesses.push_back({m, n, v, note});
}

}  // namespace

PropertyResult integrality_check(const Grid& g) {
  PropertyResult r;
  for (const auto& [m, f] : g.forms) {
    long s = s_factor(m, g.chi.modulus());
    for (const auto& [n, c] : f.terms()) {
      ++r.checked;
      Rational v = c * s;
      if (!is_integral(v)) add_witness(r, m, n, v, "s(m) a_m(n) not integral");
    }
  }
  return r;
}

PropertyResult echelon_check(const Grid& g) {
  PropertyResult r;
  for (const auto& [m, f] : g.forms) {
    for (const auto& [m2, f2] : g.forms) {
      if (m2 == m || m2 >= f.precision()) continue;
      ++r.checked;
      if (f.coeff(m2) != 0) add_witness(r, m, m2, f.coeff(m2), "nonzero at another attainable order");
    }
  }
  return r;
}

PropertyResult normalization_check(const Grid& g) {
  PropertyResult r;
  for (const auto& [m, f] : g.forms) {
    ++r.checked;
    auto v = f.valuation();
    if (!v || *v != m) {
      add_witness(r, m, v.value_or(0), 0, "valuation differs from the order");
      continue;
    }
    if (f.coeff(m) * s_factor(m, g.chi.modulus()) != 1) add_witness(r, m, m, f.coeff(m), "leading coefficient");
  }
  return r;
}

PropertyResult epsilon_check(const Grid& g) {
  PropertyResult r;
  for (const auto& [m, f] : g.forms) {
    for (const auto& [n, c] : f.terms()) {
      ++r.checked;
      if (!epsilon_allows(g.chi, g.eps, n)) add_witness(r, m, n, c, "coefficient at a disallowed exponent");
    }
  }
  return r;
}

PropertyResult stability_check(const Grid& low, const Grid& high) {
  PropertyResult r;
  auto lo = low.orders();
  auto hi = high.orders();
  if (lo != hi) {
    add_witness(r, 0, 0, 0, "attainable orders differ");
    return r;
  }
  for (const auto& [m, f] : low.forms) {
    const auto& h = high.at(m);
    long p = std::min(f.precision(), h.precision());
    for (long n = m; n < p; ++n) {
      ++r.checked;
      if (f.coeff(n) != h.coeff(n)) add_witness(r, m, n, f.coeff(n), "changed at higher precision");
    }
  }
  return r;
}

}  // namespace wmf
