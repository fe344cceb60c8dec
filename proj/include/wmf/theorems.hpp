#pragma once

// Verifiers for the duality and divisibility statements. Every verifier
// derives its divisor from scratch and computes its cusp-space hypotheses
// from holomorphic grids rather than assuming them.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "wmf/reduced.hpp"

namespace wmf {

struct Hypothesis {
  std::string space;  // e.g. "S^{(1,1)}(15,3,chi)"
  long dimension = 0;
  bool holds = false;
};

struct Report {
  std::string theorem;
  nlohmann::json params = nlohmann::json::object();
  long lo = 0;
  long hi = 0;
  std::string verdict = "pass";  // pass | fail | not-applicable
  std::vector<Hypothesis> hypotheses;
  std::vector<Witness> witnesses;
  /// Facts recorded without affecting the verdict (e.g. coefficients that
  /// violate a congruence whose hypotheses fail).
  std::vector<std::string> notes;
  long checked = 0;

  bool failed() const { return verdict == "fail"; }
  void fail(long m, long n, const Rational& v, const std::string& why);
  nlohmann::json to_json() const;
};

/// Holomorphic (max_pole 0) grid of a given sign vector at the dual weight.
using HolomorphicLookup = std::function<const Grid&(const SignVector&)>;

/// N, character, k, eps, max_pole and precision of a grid.
nlohmann::json grid_params(const Grid& g);

/// "eps1".."eps4" style label in the enumeration order of all_sign_vectors.
std::string sign_label(const QuadCharacter& chi, const SignVector& eps);

/// S^eps(N, w, chi) = {0} judged from a holomorphic grid: it vanishes iff no
/// attainable order is positive.
Hypothesis cusp_hypothesis(const Grid& holomorphic);

/// a_m(-d) + b_d(-m) = 0 for all pairs with both coefficients known, plus the
/// pairing constant term of every pair. Accepts either orientation.
Report verify_duality(const Grid& a, const Grid& b);

/// r | s(0) a_0(n) for n > 0 with r the denominator of L(1-k, chi); also the
/// prime-power prediction when one applies, and the level one refinement.
Report check_constant_divisibility(const Grid& g);

/// r^{1-k} | s(mr) a^{eps'}_{mr}(n) for (r, mnN) = 1, whenever f^eps_m exists.
Report check_hecke_divisibility(const Grid& source, const Grid& target, long r, const HolomorphicLookup& dual_weight);

/// The r-rule built from the odd prime factors of m not dividing N.
long prime_power_modulus(long m, long N);
Report check_prime_power_divisibility(const Grid& g, long m, const HolomorphicLookup& dual_weight);

/// p^{1-k} | s(mp) a(n) for p not dividing n, together with the identity
/// D^{1-k} f_{mp} = (mp)^{1-k} g_{mp} when the dual-weight grid with poles is
/// supplied.
Report check_differential_divisibility(const Grid& g, long order, long p, const HolomorphicLookup& dual_weight,
                    const Grid* dual_weight_poles = nullptr);

/// m^{1-k} | s(m) a_m(n) for (m, n) = 1 when S(N, 2-k, chi) = {0}.
Report check_full_cusp_corollary(const Grid& g, long m);

/// Weight s(0) a_m(0) / 2 of the automorphic product attached to f_m.
struct BorcherdsResult {
  std::optional<Rational> weight;
  Report report;
};
BorcherdsResult borcherds_weight(const Grid& g, long m);

/// a(1) a(rn) = a(r) a(n) for gcd(r, n) = 1 on the unique cusp form of a
/// one-dimensional eps cusp space.
Report hecke_eigen_check(const Grid& holomorphic, long r);

/// f | T(r) agrees with `expected` on every overlapping coefficient.
Report hecke_image_check(const QSeries& f, const Grid& context, long r, const QSeries& expected,
                         const std::string& label);

}  // namespace wmf
