#include "wmf/linalg.hpp"

#include <stdexcept>

namespace wmf {

namespace modp {

std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 z = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(z & kPrime);
  std::uint64_t hi = static_cast<std::uint64_t>(z >> 61);
  std::uint64_t s = lo + hi;
  return s >= kPrime ? s - kPrime : s;
}

std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s >= kPrime ? s - kPrime : s;
}

std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }

std::uint64_t inv(std::uint64_t a) {
  if (a == 0) throw std::domain_error("modp::inv of zero");
  std::uint64_t r = 1;
  std::uint64_t e = kPrime - 2;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::optional<std::uint64_t> reduce(const Rational& x) {
  std::uint64_t d = mpz_fdiv_ui(x.get_den_mpz_t(), kPrime);
  if (d == 0) return std::nullopt;
  std::uint64_t n = mpz_fdiv_ui(x.get_num_mpz_t(), kPrime);
  return mul(n, inv(d));
}

}  // namespace modp

bool ModpEchelon::add(std::vector<std::uint64_t> v) {
  if (v.size() != width_) throw std::invalid_argument("ModpEchelon: width mismatch");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    std::uint64_t c = v[pivots_[i]];
    if (c == 0) continue;
    const auto& r = rows_[i];
    for (std::size_t j = pivots_[i]; j < width_; ++j) {
      if (r[j] != 0) v[j] = modp::sub(v[j], modp::mul(c, r[j]));
    }
  }
  std::size_t piv = 0;
  while (piv < width_ && v[piv] == 0) ++piv;
  if (piv == width_) return false;
  std::uint64_t s = modp::inv(v[piv]);
  for (std::size_t j = piv; j < width_; ++j) v[j] = modp::mul(v[j], s);
  // Keep rows reduced against the new pivot so later reductions stay one-pass.
  for (auto& r : rows_) {
    std::uint64_t c = r[piv];
    if (c == 0) continue;
    for (std::size_t j = piv; j < width_; ++j) {
      if (v[j] != 0) r[j] = modp::sub(r[j], modp::mul(c, v[j]));
    }
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(piv);
  return true;
}

std::vector<std::size_t> rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  std::size_t ncols = m[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    Rational s = 1 / m[row][col];
    for (std::size_t j = col; j < ncols; ++j) {
      if (m[row][j] != 0) m[row][j] *= s;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][col] == 0) continue;
      Rational c = m[i][col];
      for (std::size_t j = col; j < ncols; ++j) {
        if (m[row][j] != 0) m[i][j] -= c * m[row][j];
      }
    }
    pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  return pivots;
}

RatMatrix nullspace(const RatMatrix& m, std::size_t ncols) {
  RatMatrix r = m;
  for (const auto& row : r) {
    if (row.size() != ncols) throw std::invalid_argument("nullspace: ragged matrix");
  }
  auto pivots = rref(r);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : pivots) is_pivot[p] = true;
  RatMatrix basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> x(ncols, Rational(0));
    x[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -r[i][f];
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace wmf
