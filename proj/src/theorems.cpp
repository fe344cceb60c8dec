#include "wmf/theorems.hpp"

#include <algorithm>
#include <stdexcept>

#include "wmf/discform.hpp"
#include "wmf/eisenstein.hpp"
#include "wmf/lvalues.hpp"
#include "wmf/operators.hpp"

namespace wmf {

void Report::fail(long m, long n, const Rational& v, const std::string& why) {
  verdict = "fail";
  if (witnesses.size() < 20) witnesses.push_back({m, n, v, why});
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["theorem"] = theorem;
  j["params"] = params;
  j["range"] = {lo, hi};
  j["verdict"] = verdict;
  j["checked"] = checked;
  j["hypotheses"] = nlohmann::json::array();
  for (const auto& h : hypotheses) {
    j["hypotheses"].push_back({{"space", h.space}, {"dimension", h.dimension}, {"holds", h.holds}});
  }
  j["witnesses"] = nlohmann::json::array();
  for (const auto& w : witnesses) {
    j["witnesses"].push_back({{"m", w.m}, {"n", w.n}, {"value", to_string(w.value)}, {"note", w.note}});
  }
  j["notes"] = notes;
  return j;
}

namespace {

Rational power(const Rational& b, long e) {
  Rational base = b;
  if (e < 0) {
    base = 1 / base;
    e = -e;
  }
  Rational r = 1;
  for (long i = 0; i < e; ++i) r *= base;
  return r;
}

bool divisible(const Rational& v, const Integer& d) {
  if (d == 1) return is_integral(v);
  Rational q = v / Rational(d);
  return is_integral(q);
}

Integer ipow_long(long b, long e) { return ipow(Integer(b), static_cast<unsigned long>(e)); }

nlohmann::json base_params(const Grid& g) {
  return {{"N", g.chi.modulus()},
          {"character", g.chi.spec()},
          {"k", g.k},
          {"eps", sign_vector_string(g.eps)},
          {"max_pole", g.max_pole},
          {"precision", g.precision}};
}

std::string space_name(const char* letter, const Grid& g) {
  return std::string(letter) + "^{" + sign_vector_string(g.eps) + "}(" + std::to_string(g.chi.modulus()) + "," +
         std::to_string(g.k) + ",chi)";
}

// Adds the hypothesis for eps (once) and reports whether it holds.
bool require_vanishing(Report& rep, const HolomorphicLookup& lookup, const SignVector& eps, int dual_k) {
  const Grid& h = lookup(eps);
  if (h.k != dual_k || h.max_pole != 0 || h.eps != eps) {
    throw std::invalid_argument("hypothesis lookup returned a grid of the wrong type");
  }
  Hypothesis hyp = cusp_hypothesis(h);
  for (const auto& existing : rep.hypotheses) {
    if (existing.space == hyp.space) return existing.holds;
  }
  rep.hypotheses.push_back(hyp);
  if (!hyp.holds) {
    rep.notes.push_back(hyp.space + " [" + sign_label(h.chi, eps) + "] has dimension " +
                        std::to_string(hyp.dimension) + ", so the vanishing hypothesis fails");
  }
  return hyp.holds;
}

void finish(Report& rep) {
  bool hyp_ok = std::all_of(rep.hypotheses.begin(), rep.hypotheses.end(), [](const Hypothesis& h) { return h.holds; });
  if (!hyp_ok) rep.verdict = "not-applicable";
}

}  // namespace

nlohmann::json grid_params(const Grid& g) { return base_params(g); }

std::string sign_label(const QuadCharacter& chi, const SignVector& eps) {
  auto all = all_sign_vectors(chi);
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i] == eps) return "eps" + std::to_string(i + 1);
  }
  return "eps?";
}

Hypothesis cusp_hypothesis(const Grid& holomorphic) {
  Hypothesis h;
  h.space = space_name("S", holomorphic);
  h.dimension = holomorphic.cusp_dimension();
  h.holds = h.dimension == 0;
  return h;
}

Report verify_duality(const Grid& a, const Grid& b) {
  const Grid& F = a.k <= 0 ? a : b;
  const Grid& G = a.k <= 0 ? b : a;
  if (F.k + G.k != 2) throw std::invalid_argument("duality pairs weights k and 2-k");
  if (!(F.chi == G.chi)) throw std::invalid_argument("duality needs a common character");
  if (G.eps != dual_sign(F.chi, F.eps)) throw std::invalid_argument("duality pairs eps with its dual sign vector");
  const long N = F.chi.modulus();
  Report rep;
  rep.theorem = "zagier-duality";
  rep.params = base_params(F);
  rep.params["dual_k"] = G.k;
  rep.params["dual_eps"] = sign_vector_string(G.eps);
  long skipped = 0;
  long pairings = 0;
  rep.lo = 0;
  rep.hi = 0;
  for (const auto& [m, f] : F.forms) {
    if (G.has(-m)) rep.fail(m, -m, 0, "orders m and -m attainable on both sides");
  }
  for (const auto& [m, f] : F.forms) {
    for (const auto& [d, g] : G.forms) {
      if (-d >= f.precision() || -m >= g.precision()) {
        ++skipped;
        continue;
      }
      ++rep.checked;
      rep.lo = std::min({rep.lo, m, d});
      rep.hi = std::max({rep.hi, -m, -d});
      Rational s = f.coeff(-d) + g.coeff(-m);
      if (s != 0) rep.fail(m, d, s, "a_m(-d) + b_d(-m) != 0");
      try {
        Rational p = pairing_constant_term(f, g, N);
        ++pairings;
        if (p != 0) rep.fail(m, d, p, "pairing constant term != 0");
      } catch (const std::invalid_argument&) {
        rep.notes.push_back("pairing window short for (m, d) = (" + std::to_string(m) + ", " + std::to_string(d) + ")");
      }
    }
  }
  rep.params["pairs"] = rep.checked;
  rep.params["pairings"] = pairings;
  if (skipped) rep.notes.push_back(std::to_string(skipped) + " pairs lie outside the known precision");
  return rep;
}

Report check_constant_divisibility(const Grid& g) {
  if (g.k < 2) throw std::invalid_argument("constant-term divisibility needs weight >= 2");
  Report rep;
  rep.theorem = "constant-term-divisibility";
  rep.params = base_params(g);
  const long N = g.chi.modulus();
  const KroneckerChar x = g.chi.kronecker_form();
  const LValue L = l_value_neg(g.k, x);
  rep.params["L_value"] = to_string(L.value);
  rep.params["r"] = L.denominator.get_str();
  if (!g.has(0)) {
    rep.verdict = "not-applicable";
    rep.notes.push_back("the grid has no reduced form of order 0");
    return rep;
  }
  const QSeries& f0 = g.at(0);
  const long s0 = s_factor(0, N);
  rep.lo = 1;
  rep.hi = f0.precision() - 1;

  std::vector<std::pair<Integer, std::string>> divisors_to_check{{L.denominator, "L-value denominator"}};
  if (auto pred = carlitz_denominator_prediction(N, g.k, x)) {
    rep.params["prime_power_prediction"] = pred->get_str();
    if (*pred != L.denominator) {
      rep.fail(0, 0, Rational(*pred), "prime-power prediction differs from the L-value denominator");
    }
    divisors_to_check.emplace_back(*pred, "prime-power prediction");
  }
  if (N == 1) {
    Integer sc = staudt_clausen_divisor(g.k);
    rep.params["level_one_divisor"] = sc.get_str();
    divisors_to_check.emplace_back(sc, "level one Bernoulli divisor");
  }
  for (long n = 1; n < f0.precision(); ++n) {
    Rational v = f0.coeff(n) * s0;
    for (const auto& [d, what] : divisors_to_check) {
      ++rep.checked;
      if (!divisible(v, d)) rep.fail(0, n, v, what + " " + d.get_str() + " does not divide s(0)a_0(n)");
    }
  }
  return rep;
}

Report check_hecke_divisibility(const Grid& source, const Grid& target, long r, const HolomorphicLookup& dual_weight) {
  const QuadCharacter& chi = source.chi;
  const long N = chi.modulus();
  const int k = source.k;
  if (k > 0) throw std::invalid_argument("Hecke divisibility is stated for k <= 0");
  if (target.k != k || !(target.chi == chi)) throw std::invalid_argument("source and target grids differ in type");
  if (gcd(r, N) != 1) throw std::invalid_argument("r must be coprime to N");
  if (target.eps != sign_image(chi, source.eps, r)) {
    throw std::invalid_argument("target sign vector must be the image eps' of the source under r");
  }
  Report rep;
  rep.theorem = in_R0(chi, r) ? "hecke-divisibility-R0" : "hecke-divisibility";
  rep.params = base_params(source);
  rep.params["r"] = r;
  rep.params["eps_prime"] = sign_vector_string(target.eps);
  rep.params["eps_label"] = sign_label(chi, source.eps);
  rep.params["eps_prime_label"] = sign_label(chi, target.eps);
  const Integer mod = ipow_long(r, 1 - k);
  rep.params["divisor"] = mod.get_str();
  require_vanishing(rep, dual_weight, dual_sign(chi, source.eps), 2 - k);
  require_vanishing(rep, dual_weight, dual_sign(chi, target.eps), 2 - k);
  finish(rep);

  if (rep.verdict == "not-applicable") {
    // Record what the congruence would have claimed, without judging it.
    int shown = 0;
    for (const auto& [t, f] : target.forms) {
      if (t >= 0 || t % r != 0 || gcd(t / r, r) != 1) continue;
      const long st = s_factor(t, N);
      for (const auto& [n, c] : f.terms()) {
        if (gcd(n, r) != 1 || shown >= 5) continue;
        Rational v = c * st;
        if (!divisible(v, mod)) {
          rep.notes.push_back("s(" + std::to_string(t) + ")a_" + std::to_string(t) + "(" + std::to_string(n) +
                              ") = " + to_string(v) + " is not divisible by " + mod.get_str() +
                              (divisible(v, Integer(r)) ? "" : " (nor by " + std::to_string(r) + ")"));
          ++shown;
        }
      }
    }
    return rep;
  }

  rep.lo = target.precision;
  rep.hi = 0;
  const int chir = chi(r);
  for (const auto& [m, fm] : source.forms) {
    if (m >= 0 || gcd(m, r) != 1) continue;
    const long t = m * r;
    if (t < -target.max_pole) {
      rep.notes.push_back("order " + std::to_string(t) + " lies beyond the target pole bound");
      continue;
    }
    if (!target.has(t)) {
      rep.fail(m, t, 0, "f_{mr} is missing from the target grid");
      continue;
    }
    const QSeries& ft = target.at(t);
    const long st = s_factor(t, N);
    const long sm = s_factor(m, N);
    for (long n = t; n < ft.precision(); ++n) {
      if (gcd(n, r) != 1) continue;
      ++rep.checked;
      rep.lo = std::min(rep.lo, n);
      rep.hi = std::max(rep.hi, n);
      Rational v = ft.coeff(n) * st;
      if (!divisible(v, mod)) rep.fail(t, n, v, "not divisible by " + mod.get_str());
      if (r * n < fm.precision() && r * n >= m) {
        Rational lhs = Rational(mod) * sm * fm.coeff(r * n);
        if (lhs != chir * v) rep.fail(t, n, lhs, "r^{1-k} s(m) a_m(rn) != chi(r) s(mr) a_mr(n)");
      }
    }
  }
  return rep;
}

long prime_power_modulus(long m, long N) {
  long r = 1;
  for (auto [p, e] : factorize(m < 0 ? -m : m)) {
    long pp = static_cast<long>(p);
    if (pp == 2 || N % pp == 0) continue;
    long rp = (e % 2 == 0) ? e : (e - 1) / 2;
    for (long i = 0; i < rp; ++i) r *= pp;
  }
  return r;
}

Report check_prime_power_divisibility(const Grid& g, long m, const HolomorphicLookup& dual_weight) {
  if (g.k > 0) throw std::invalid_argument("stated for k <= 0");
  const long N = g.chi.modulus();
  Report rep;
  rep.theorem = "prime-power-hecke-divisibility";
  rep.params = base_params(g);
  rep.params["m"] = m;
  const long r = prime_power_modulus(m, N);
  const Integer mod = ipow_long(r, 1 - g.k);
  rep.params["r"] = r;
  rep.params["divisor"] = mod.get_str();
  require_vanishing(rep, dual_weight, dual_sign(g.chi, g.eps), 2 - g.k);
  finish(rep);
  if (rep.verdict == "not-applicable") return rep;
  if (!g.has(m)) {
    rep.verdict = "not-applicable";
    rep.notes.push_back("f_m does not exist in this grid");
    return rep;
  }
  if (r == 1) rep.notes.push_back("r = 1: the statement is vacuous for this m");
  const QSeries& f = g.at(m);
  const long sm = s_factor(m, N);
  rep.lo = m;
  rep.hi = f.precision() - 1;
  for (long n = m; n < f.precision(); ++n) {
    if (gcd(m, n) != 1) continue;
    ++rep.checked;
    Rational v = f.coeff(n) * sm;
    if (!divisible(v, mod)) rep.fail(m, n, v, "not divisible by " + mod.get_str());
  }
  return rep;
}

Report check_differential_divisibility(const Grid& g, long order, long p, const HolomorphicLookup& dual_weight,
                    const Grid* dual_weight_poles) {
  if (g.k > 0) throw std::invalid_argument("stated for k <= 0");
  const long N = g.chi.modulus();
  Report rep;
  rep.theorem = "differential-divisibility";
  rep.params = base_params(g);
  rep.params["order"] = order;
  rep.params["p"] = p;
  if (p == 1) {
    rep.notes.push_back("p = 1: vacuous");
    return rep;
  }
  if (!is_prime(static_cast<std::uint64_t>(p)) || order % p != 0) {
    throw std::invalid_argument("p must be a prime dividing the order");
  }
  const Integer mod = ipow_long(p, 1 - g.k);
  rep.params["divisor"] = mod.get_str();
  require_vanishing(rep, dual_weight, g.eps, 2 - g.k);
  require_vanishing(rep, dual_weight, dual_sign(g.chi, g.eps), 2 - g.k);
  finish(rep);
  if (rep.verdict == "not-applicable") return rep;
  if (!g.has(order)) {
    rep.verdict = "not-applicable";
    rep.notes.push_back("f_{mp} does not exist in this grid");
    return rep;
  }
  const QSeries& f = g.at(order);
  const long s = s_factor(order, N);
  rep.lo = order;
  rep.hi = f.precision() - 1;
  for (long n = order; n < f.precision(); ++n) {
    if (n % p == 0) continue;
    ++rep.checked;
    Rational v = f.coeff(n) * s;
    if (!divisible(v, mod)) rep.fail(order, n, v, "not divisible by " + mod.get_str());
  }
  if (dual_weight_poles) {
    const Grid& G = *dual_weight_poles;
    if (G.k != 2 - g.k || G.eps != g.eps) throw std::invalid_argument("mechanism grid must be A^eps(N, 2-k)");
    if (order < -G.max_pole) {
      rep.notes.push_back("mechanism not checked: order beyond the dual grid's pole bound");
    } else if (!G.has(order)) {
      rep.fail(order, order, 0, "g_{mp} missing from the weight 2-k grid");
    } else {
      QSeries lhs = differential_power(f, g.k);
      QSeries rhs = G.at(order) * power(Rational(order), 1 - g.k);
      const long P = std::min(lhs.precision(), rhs.precision());
      for (long n = order; n < P; ++n) {
        ++rep.checked;
        if (lhs.coeff(n) != rhs.coeff(n)) rep.fail(order, n, lhs.coeff(n), "D^{1-k} f_{mp} != (mp)^{1-k} g_{mp}");
      }
      rep.params["mechanism_checked_to"] = P;
    }
  }
  return rep;
}

Report check_full_cusp_corollary(const Grid& g, long m) {
  if (g.k > 0) throw std::invalid_argument("stated for k <= 0");
  const long N = g.chi.modulus();
  Report rep;
  rep.theorem = "full-cusp-space-divisibility";
  rep.params = base_params(g);
  rep.params["m"] = m;
  Hypothesis h;
  h.space = "S(" + std::to_string(N) + "," + std::to_string(2 - g.k) + ",chi)";
  h.dimension = dim_cusp_forms(N, 2 - g.k, g.chi.kronecker_form());
  h.holds = h.dimension == 0;
  rep.hypotheses.push_back(h);
  finish(rep);
  if (rep.verdict == "not-applicable") return rep;
  if (!g.has(m)) {
    rep.verdict = "not-applicable";
    rep.notes.push_back("f_m does not exist in this grid");
    return rep;
  }
  const Integer mod = ipow_long(m < 0 ? -m : m, 1 - g.k);
  rep.params["divisor"] = mod.get_str();
  const QSeries& f = g.at(m);
  const long s = s_factor(m, N);
  rep.lo = m;
  rep.hi = f.precision() - 1;
  for (long n = m; n < f.precision(); ++n) {
    if (gcd(m, n) != 1) continue;
    ++rep.checked;
    Rational v = f.coeff(n) * s;
    if (!divisible(v, mod)) rep.fail(m, n, v, "not divisible by " + mod.get_str());
  }
  return rep;
}

BorcherdsResult borcherds_weight(const Grid& g, long m) {
  BorcherdsResult out;
  Report& rep = out.report;
  rep.theorem = "borcherds-weight";
  rep.params = base_params(g);
  rep.params["m"] = m;
  const long N = g.chi.modulus();
  std::string why;
  if (N <= 1 || g.chi.disc() != N) why = "N is not a positive fundamental discriminant with chi = (N/.)";
  if (g.k != 0) why = "weight must be 0";
  for (long p : g.chi.primes()) {
    if (g.eps.at(p) != g.chi.local(p, -1)) why = "eps_p must equal chi_p(-1)";
  }
  if (why.empty() && (!g.has(m) || m >= 0)) why = "f_m with m < 0 does not exist";
  if (!why.empty()) {
    rep.verdict = "not-applicable";
    rep.notes.push_back(why);
    return out;
  }
  Rational w = Rational(s_factor(0, N)) * g.at(m).coeff(0) / 2;
  out.weight = w;
  rep.params["weight"] = to_string(w);
  rep.checked = 1;
  if (N == 5) {
    rep.params["divisor"] = 5;
    if (!divisible(w, Integer(5))) rep.fail(m, 0, w, "weight not divisible by 5");
  }
  return out;
}

Report hecke_eigen_check(const Grid& holomorphic, long r) {
  Report rep;
  rep.theorem = "hecke-eigenform";
  rep.params = base_params(holomorphic);
  rep.params["r"] = r;
  Hypothesis h;
  h.space = space_name("S", holomorphic);
  h.dimension = holomorphic.cusp_dimension();
  h.holds = h.dimension == 1;
  rep.hypotheses.push_back(h);
  if (!h.holds) {
    rep.verdict = "not-applicable";
    rep.notes.push_back("the eps cusp space is not one-dimensional");
    return rep;
  }
  if (!in_R0(holomorphic.chi, r)) {
    rep.verdict = "not-applicable";
    rep.notes.push_back("r is not in R0");
    return rep;
  }
  const QSeries* g = nullptr;
  for (const auto& [m, f] : holomorphic.forms) {
    if (m > 0) g = &f;
  }
  const Rational a1 = g->coeff(1);
  const Rational ar = r < g->precision() ? g->coeff(r) : Rational(0);
  rep.lo = 1;
  rep.hi = 0;
  for (long n = 1; r * n < g->precision(); ++n) {
    if (gcd(r, n) != 1) continue;
    ++rep.checked;
    rep.hi = r * n;
    Rational lhs = a1 * g->coeff(r * n);
    Rational rhs = ar * g->coeff(n);
    if (lhs != rhs) rep.fail(r, n, lhs - rhs, "a(1)a(rn) != a(r)a(n)");
  }
  return rep;
}

Report hecke_image_check(const QSeries& f, const Grid& context, long r, const QSeries& expected,
                         const std::string& label) {
  Report rep;
  rep.theorem = "hecke-image";
  rep.params = base_params(context);
  rep.params["r"] = r;
  rep.params["image"] = label;
  QSeries h = hecke_T(f, context.chi, context.k, r);
  const long P = std::min(h.precision(), expected.precision());
  long lo = P;
  if (auto v = h.valuation()) lo = std::min(lo, *v);
  if (auto v = expected.valuation()) lo = std::min(lo, *v);
  rep.lo = lo;
  rep.hi = P - 1;
  for (long n = lo; n < P; ++n) {
    ++rep.checked;
    if (h.coeff(n) != expected.coeff(n)) rep.fail(r, n, h.coeff(n), "coefficient of f|T(r) differs");
  }
  return rep;
}

}  // namespace wmf
