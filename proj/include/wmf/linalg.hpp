#pragma once

// Exact rational linear algebra plus a word-size modular shadow used to pick
// pivots cheaply before doing the exact work.

#include <cstdint>
#include <optional>
#include <vector>

#include "wmf/arith.hpp"

namespace wmf {

using RatMatrix = std::vector<std::vector<Rational>>;

/// Arithmetic modulo the Mersenne prime 2^61 - 1.
namespace modp {
constexpr std::uint64_t kPrime = (1ULL << 61) - 1;
std::uint64_t mul(std::uint64_t a, std::uint64_t b);
std::uint64_t add(std::uint64_t a, std::uint64_t b);
std::uint64_t sub(std::uint64_t a, std::uint64_t b);
std::uint64_t inv(std::uint64_t a);
/// Image of x; nullopt if the denominator vanishes mod p.
std::optional<std::uint64_t> reduce(const Rational& x);
}  // namespace modp

/// Incremental row echelon form mod p: add() reports whether a vector
/// enlarged the span.
class ModpEchelon {
 public:
  explicit ModpEchelon(std::size_t width) : width_(width) {}
  bool add(std::vector<std::uint64_t> v);
  std::size_t rank() const { return rows_.size(); }

 private:
  std::size_t width_;
  std::vector<std::vector<std::uint64_t>> rows_;
  std::vector<std::size_t> pivots_;
};

/// In-place reduced row echelon form; returns the pivot columns and drops
/// zero rows. Pivot entries are 1.
std::vector<std::size_t> rref(RatMatrix& m);

/// Basis of {x : m x = 0}, each vector with a 1 at its free column.
RatMatrix nullspace(const RatMatrix& m, std::size_t ncols);

}  // namespace wmf
