#include "wmf/discform.hpp"

#include <algorithm>
#include <stdexcept>

namespace wmf {

namespace {

Rational frac(const Rational& x) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  Rational r = x - Rational(fl);
  r.canonicalize();
  return r;
}

long den_of(const Rational& x) { return x.get_den().get_si(); }

// e(x) as an element of Q(zeta_L); the denominator of x must divide L.
Cyclotomic e_of(const Rational& x, long L) {
  Rational y = frac(x);
  long d = den_of(y);
  if (L % d != 0) throw std::logic_error("e_of: denominator does not divide the field order");
  long a = y.get_num().get_si() * (L / d);
  return Cyclotomic::zeta(L, a);
}

CycMatrix matmul(const CycMatrix& a, const CycMatrix& b, long L) {
  const std::size_t n = a.size();
  CycMatrix c(n, std::vector<Cyclotomic>(n, Cyclotomic(L)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (b[k][j].is_zero()) continue;
        c[i][j] += a[i][k] * b[k][j];
      }
    }
  }
  return c;
}

bool is_identity(const CycMatrix& m, long L) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (!(m[i][j] == Cyclotomic(L, i == j ? 1 : 0))) return false;
    }
  }
  return true;
}

bool equal(const CycMatrix& a, const CycMatrix& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (!(a[i][j] == b[i][j])) return false;
    }
  }
  return true;
}

long mod(long a, long n) { return ((a % n) + n) % n; }

}  // namespace

long DiscriminantForm::size() const {
  long s = 1;
  for (long n : orders) s *= n;
  return s;
}

std::vector<std::vector<long>> DiscriminantForm::elements() const {
  std::vector<std::vector<long>> out;
  std::vector<long> x(orders.size(), 0);
  const long total = size();
  for (long idx = 0; idx < total; ++idx) {
    out.push_back(x);
    for (std::size_t i = orders.size(); i-- > 0;) {
      if (++x[i] < orders[i]) break;
      x[i] = 0;
    }
  }
  return out;
}

Rational DiscriminantForm::Q(const std::vector<long>& x) const {
  Rational s = 0;
  for (std::size_t i = 0; i < q.size(); ++i) s += q[i] * x[i] * x[i];
  return frac(s);
}

Rational DiscriminantForm::B(const std::vector<long>& x, const std::vector<long>& y) const {
  Rational s = 0;
  for (std::size_t i = 0; i < q.size(); ++i) s += 2 * q[i] * x[i] * y[i];
  return frac(s);
}

long DiscriminantForm::denominator() const {
  long L = 1;
  for (const auto& qi : q) L = lcm(L, den_of(qi));
  return L;
}

std::vector<std::pair<int, int>> eight_adic_options(const QuadCharacter& chi, const SignVector& eps) {
  std::vector<std::pair<int, int>> out;
  const long N = chi.modulus();
  if (N % 8 != 0 || N % 16 == 0) return out;
  const int minus_one = chi.local(2, -1);
  const int e2 = eps.at(2);
  for (int t1 : {-1, 1}) {
    for (int t2 : {-3, -1, 1, 3}) {
      int s = mod(t1 + t2, 8);
      if (minus_one == 1 && s != 0) continue;
      if (minus_one == -1 && s != 4) continue;
      if (chi.local(2, t2 * (N / 8)) != e2) continue;
      out.emplace_back(t1, t2);
    }
  }
  return out;
}

DiscriminantForm build_discform(const QuadCharacter& chi, const SignVector& eps,
                                std::optional<std::pair<int, int>> two_adic) {
  DiscriminantForm D;
  const long N = chi.modulus();
  D.level = N;
  std::string desc;
  for (long p : chi.primes()) {
    const int e = eps.at(p);
    if (p != 2) {
      long a = 1;
      while (chi.local(p, a * (N / p)) != e) ++a;
      D.orders.push_back(p);
      D.q.push_back(make_rational(a, p));
      desc += (desc.empty() ? "" : " + ") + std::string("Z/") + std::to_string(p) + "[" + std::to_string(a) + "x^2/" +
              std::to_string(p) + "]";
      continue;
    }
    const long N2 = chi.local_modulus(2);
    if (N2 == 4) {
      const int c = e * chi.local(2, N / 4);
      for (int i = 0; i < 2; ++i) {
        D.orders.push_back(2);
        D.q.push_back(make_rational(c, 4));
      }
      desc += (desc.empty() ? "" : " + ") + std::string("(Z/2)^2[") + std::to_string(c) + "(x^2+y^2)/4]";
    } else {
      auto opts = eight_adic_options(chi, eps);
      if (opts.empty()) {
        throw std::invalid_argument("no 2-adic Jordan block for " + chi.spec() + " with eps_2 = " +
                                    std::to_string(e));
      }
      auto choice = opts.front();
      if (two_adic) {
        if (std::find(opts.begin(), opts.end(), *two_adic) == opts.end()) {
          throw std::invalid_argument("requested (t1, t2) is not admissible");
        }
        choice = *two_adic;
      }
      D.orders.push_back(2);
      D.q.push_back(make_rational(choice.first, 4));
      D.orders.push_back(4);
      D.q.push_back(make_rational(choice.second, 8));
      desc += (desc.empty() ? "" : " + ") + std::string("Z/2[") + std::to_string(choice.first) + "x^2/4] + Z/4[" +
              std::to_string(choice.second) + "y^2/8]";
    }
  }
  D.description = desc.empty() ? "trivial" : desc;
  if (D.size() != N) throw std::logic_error("discriminant form has the wrong order");
  return D;
}

DiscriminantForm dual_discform(const DiscriminantForm& D) {
  DiscriminantForm out = D;
  for (auto& x : out.q) x = -x;
  out.description = "dual of " + D.description;
  return out;
}

Cyclotomic gauss_sum(const DiscriminantForm& D) {
  const long L = lcm(8, D.denominator());
  Cyclotomic G(L);
  for (const auto& x : D.elements()) G += e_of(D.Q(x), L);
  return G;
}

int signature(const DiscriminantForm& D) {
  const long L = lcm(8, D.denominator());
  const Cyclotomic G = gauss_sum(D);
  const Rational n(D.size());
  for (int r = 0; r < 8; ++r) {
    Cyclotomic root = G * Cyclotomic::zeta(L, mod(-r * (L / 8), L));
    if (!(root == root.conjugate()) || !(root * root == Cyclotomic(L, n))) continue;
    if (root.embed().real() <= 0) continue;
    if (r % 2 != 0) break;
    return r;
  }
  throw std::invalid_argument("Gauss sum does not correspond to an even signature");
}

std::vector<long> q_values(const DiscriminantForm& D) {
  std::vector<long> out;
  for (const auto& x : D.elements()) {
    Rational v = D.Q(x) * D.level;
    if (!is_integral(v)) throw std::logic_error("N Q(x) is not integral");
    out.push_back(mod(v.get_num().get_si(), D.level));
  }
  std::sort(out.begin(), out.end());
  return out;
}

WeilRep weil_matrices(const DiscriminantForm& D) {
  WeilRep W;
  W.signature = signature(D);
  const long L = lcm(8, D.denominator());
  W.order = L;
  const auto E = D.elements();
  const std::size_t n = E.size();
  // i^{-r/2} / sqrt|D| = e(-r/8) * (G e(-r/8)) / |D|
  Cyclotomic c = gauss_sum(D) * Cyclotomic::zeta(L, mod(-W.signature * (L / 4), L));
  c *= make_rational(1, static_cast<long>(n));
  W.S.assign(n, std::vector<Cyclotomic>(n, Cyclotomic(L)));
  W.T.assign(n, std::vector<Cyclotomic>(n, Cyclotomic(L)));
  for (std::size_t i = 0; i < n; ++i) {
    W.T[i][i] = e_of(D.Q(E[i]), L);
    for (std::size_t j = 0; j < n; ++j) W.S[j][i] = c * e_of(-D.B(E[i], E[j]), L);
  }
  return W;
}

WeilCheck check_weil(const DiscriminantForm& D) {
  WeilCheck out;
  const Cyclotomic G = gauss_sum(D);
  int r = 0;
  try {
    r = signature(D);
  } catch (const std::invalid_argument&) {
    return out;
  }
  (void)r;
  out.milgram = (G * G.conjugate()) == Cyclotomic(G.order(), Rational(D.size()));
  const WeilRep W = weil_matrices(D);
  const long L = W.order;
  const CycMatrix S2 = matmul(W.S, W.S, L);
  out.s_fourth_identity = is_identity(matmul(S2, S2, L), L);
  const CycMatrix ST = matmul(W.S, W.T, L);
  out.braid = equal(matmul(matmul(ST, ST, L), ST, L), S2);
  CycMatrix SH(W.S.size(), std::vector<Cyclotomic>(W.S.size(), Cyclotomic(L)));
  for (std::size_t i = 0; i < W.S.size(); ++i) {
    for (std::size_t j = 0; j < W.S.size(); ++j) SH[i][j] = W.S[j][i].conjugate();
  }
  out.unitary = is_identity(matmul(W.S, SH, L), L);
  return out;
}

VectorForm lift(const QSeries& f, const QuadCharacter& chi, const DiscriminantForm& D) {
  VectorForm F;
  F.D = D;
  const long N = chi.modulus();
  for (const auto& x : D.elements()) {
    Rational v = D.Q(x) * N;
    long c = mod(v.get_num().get_si(), N);
    F.residue.push_back(c);
    F.components.emplace(c, QSeries(f.precision()));
  }
  for (const auto& [n, a] : f.terms()) {
    auto it = F.components.find(mod(n, N));
    if (it == F.components.end()) {
      F.stray_exponents.push_back(n);
      continue;
    }
    it->second.set(n, a * s_factor(n, N));
  }
  return F;
}

namespace {

Rational constant_term(const QSeries& f, const QSeries& g) {
  auto vf = f.valuation();
  auto vg = g.valuation();
  if (!vf || !vg) {
    if ((!vf && f.precision() <= 0) || (!vg && g.precision() <= 0)) {
      throw std::invalid_argument("pairing: series unknown at the constant term");
    }
    return 0;
  }
  if (f.precision() <= -*vg || g.precision() <= -*vf) {
    throw std::invalid_argument("pairing: insufficient overlap precision");
  }
  Rational s = 0;
  for (long n = *vf; n <= -*vg; ++n) {
    Rational a = f.coeff(n);
    if (a == 0) continue;
    s += a * g.coeff(-n);
  }
  return s;
}

}  // namespace

Rational pairing_constant_term(const QSeries& f, const QSeries& g, long N) {
  QSeries sf(f.precision());
  for (const auto& [n, a] : f.terms()) sf.set(n, a * s_factor(n, N));
  return constant_term(sf, g);
}

Rational lift_pairing_constant_term(const VectorForm& F, const VectorForm& G) {
  if (F.residue.size() != G.residue.size()) throw std::invalid_argument("lifts live on different modules");
  Rational s = 0;
  for (std::size_t i = 0; i < F.residue.size(); ++i) {
    s += constant_term(F.components.at(F.residue[i]), G.components.at(G.residue[i]));
  }
  return s;
}

}  // namespace wmf
