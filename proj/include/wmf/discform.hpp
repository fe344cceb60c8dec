#pragma once

// Finite quadratic modules D^eps attached to (chi, eps), their Weil
// representation, the vector-valued lift and the duality pairing.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wmf/arith.hpp"
#include "wmf/characters.hpp"
#include "wmf/qseries.hpp"

namespace wmf {

/// Orthogonal sum of cyclic pieces Z/n_i with Q(x) = sum q_i x_i^2 mod 1.
struct DiscriminantForm {
  long level = 1;
  std::vector<long> orders;
  std::vector<Rational> q;
  std::string description;

  long size() const;
  /// Elements in mixed radix order (first coordinate slowest).
  std::vector<std::vector<long>> elements() const;
  /// Q(x) reduced to [0, 1).
  Rational Q(const std::vector<long>& x) const;
  /// (x, y) = Q(x + y) - Q(x) - Q(y) reduced to [0, 1).
  Rational B(const std::vector<long>& x, const std::vector<long>& y) const;
  /// Least common denominator of all values of Q and B.
  long denominator() const;
};

/// Admissible (t1, t2) for the 8 || N Jordan block, lexicographic order.
std::vector<std::pair<int, int>> eight_adic_options(const QuadCharacter& chi, const SignVector& eps);

/// D^eps. When 8 || N the lexicographically smallest admissible (t1, t2) is
/// used unless `two_adic` selects another; throws std::invalid_argument if no
/// admissible choice exists.
DiscriminantForm build_discform(const QuadCharacter& chi, const SignVector& eps,
                                std::optional<std::pair<int, int>> two_adic = std::nullopt);

/// (D, -Q).
DiscriminantForm dual_discform(const DiscriminantForm& D);

/// sum_gamma e(Q(gamma)).
Cyclotomic gauss_sum(const DiscriminantForm& D);

/// r mod 8 with G = sqrt|D| e(r/8), verified exactly. Throws for odd r.
int signature(const DiscriminantForm& D);

/// Multiset of N Q(gamma) mod N, sorted.
std::vector<long> q_values(const DiscriminantForm& D);

using CycMatrix = std::vector<std::vector<Cyclotomic>>;

struct WeilRep {
  int signature = 0;
  long order = 1;  // cyclotomic field Q(zeta_order) holding all entries
  CycMatrix S;
  CycMatrix T;
};

/// rho(T) e_g = e(Q(g)) e_g, rho(S) e_g = i^{-r/2} |D|^{-1/2} sum_d e(-(g, d)) e_d.
WeilRep weil_matrices(const DiscriminantForm& D);

struct WeilCheck {
  bool s_fourth_identity = false;
  bool braid = false;  // (S T)^3 = S^2
  bool unitary = false;
  bool milgram = false;
  bool all() const { return s_fourth_identity && braid && unitary && milgram; }
};
WeilCheck check_weil(const DiscriminantForm& D);

/// Vector-valued lift: components indexed by the residue N Q(gamma) mod N,
/// F_c = sum_{n = c mod N} s(n) a(n) q^{n/N}. Series exponents are n.
struct VectorForm {
  DiscriminantForm D;
  std::vector<long> residue;               // per element of D.elements()
  std::map<long, QSeries> components;      // residue -> F
  /// Exponents n with a(n) != 0 whose residue N Q(gamma) is not attained.
  std::vector<long> stray_exponents;
};
VectorForm lift(const QSeries& f, const QuadCharacter& chi, const DiscriminantForm& D);

/// Constant term of <F, G> reduced to sum_n s(n) a(n) b(-n). Throws
/// std::invalid_argument when either series is unknown on the needed window.
Rational pairing_constant_term(const QSeries& f, const QSeries& g, long N);

/// Constant term of sum_gamma F_gamma G_gamma computed from two lifts on
/// D and D*; proportional to pairing_constant_term.
Rational lift_pairing_constant_term(const VectorForm& F, const VectorForm& G);

}  // namespace wmf
