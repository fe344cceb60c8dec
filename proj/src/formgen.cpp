#include "wmf/formgen.hpp"

#include <functional>
#include <map>
#include <stdexcept>

#include "wmf/eisenstein.hpp"
#include "wmf/linalg.hpp"

namespace wmf {

long sturm_bound(long N, long k) {
  if (k < 0) k = 0;
  long num = k * gamma0_index(N);
  return (num + 11) / 12 + 1;
}

namespace {

struct Candidate {
  std::string label;
  std::function<QSeries(long)> expand;
};

std::vector<Candidate> candidates(long N, int K, const KroneckerChar& psi) {
  std::vector<Candidate> out;
  auto discs = fundamental_discriminants_dividing(N);
  for (const auto& s : eisenstein_specs(N, K, psi)) {
    out.push_back({s.to_string(), [s](long p) { return eisenstein_expansion(s, p); }});
  }
  for (const auto& e : holomorphic_eta_quotients(N, K)) {
    if (eta_character(e) != psi) continue;
    out.push_back({e.to_string(), [e](long p) { return eta_expansion(e, p); }});
  }
  for (int a = 1; 2 * a <= K; ++a) {
    for (long d : discs) {
      KroneckerChar pa{d};
      KroneckerChar pb = char_product(psi, pa);
      if (N % pb.conductor() != 0) continue;
      for (const auto& s1 : eisenstein_specs(N, a, pa)) {
        for (const auto& s2 : eisenstein_specs(N, K - a, pb)) {
          out.push_back({s1.to_string() + "*" + s2.to_string(), [s1, s2](long p) {
                           return (eisenstein_expansion(s1, p) * eisenstein_expansion(s2, p)).truncated(p);
                         }});
        }
      }
    }
  }
  for (int w = 1; w < K; ++w) {
    for (const auto& e : holomorphic_eta_quotients(N, w)) {
      auto pe = eta_character(e);
      KroneckerChar pb = char_product(psi, *pe);
      if (N % pb.conductor() != 0) continue;
      for (const auto& s : eisenstein_specs(N, K - w, pb)) {
        out.push_back({e.to_string() + "*" + s.to_string(),
                       [e, s](long p) { return (eta_expansion(e, p) * eisenstein_expansion(s, p)).truncated(p); }});
      }
    }
  }
  return out;
}

std::vector<std::uint64_t> modp_vector(const QSeries& f, long len, bool& ok) {
  std::vector<std::uint64_t> v(static_cast<std::size_t>(len), 0);
  for (const auto& [n, c] : f.terms()) {
    if (n < 0 || n >= len) continue;
    auto r = modp::reduce(c);
    if (!r) {
      ok = false;
      return v;
    }
    v[static_cast<std::size_t>(n)] = *r;
  }
  return v;
}

}  // namespace

FormBasis holomorphic_basis(long N, int k, const KroneckerChar& psi, long prec) {
  if (k < 2) throw std::invalid_argument("holomorphic_basis needs weight >= 2");
  FormBasis b;
  b.N = N;
  b.k = k;
  b.psi = psi;
  b.dimension = dim_modular_forms(N, k, psi);
  if (b.dimension == 0) return b;

  const long low = sturm_bound(N, k) + 5;
  auto cands = candidates(N, k, psi);
  ModpEchelon ech(static_cast<std::size_t>(low));
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    bool ok = true;
    auto v = modp_vector(cands[i].expand(low), low, ok);
    if (!ok) continue;
    if (ech.add(std::move(v))) chosen.push_back(i);
    if (static_cast<long>(ech.rank()) > b.dimension) {
      throw std::logic_error("candidate forms exceed the dimension of M_" + std::to_string(k) + "(" +
                             std::to_string(N) + ", " + std::to_string(psi.disc) + "): " + cands[i].label);
    }
  }
  if (static_cast<long>(ech.rank()) < b.dimension) {
    throw std::runtime_error("pool rank deficiency: spanned " + std::to_string(ech.rank()) + " of " +
                             std::to_string(b.dimension) + " dimensions of M_" + std::to_string(k) + "(" +
                             std::to_string(N) + ", " + std::to_string(psi.disc) + ")");
  }
  for (auto i : chosen) {
    b.forms.push_back(cands[i].expand(prec));
    b.labels.push_back(cands[i].label);
  }
  return b;
}

std::map<long, long> cusp_pole_bounds(long N, long max_pole) {
  std::map<long, long> needs;
  for (long d : divisors(N)) {
    if (d == N) {
      needs[d] = max_pole;
      continue;
    }
    long num = max_pole * d * d;
    long den = N * gcd(d * d, N);
    needs[d] = (num + den - 1) / den;
  }
  return needs;
}

Pool build_pool(const QuadCharacter& chi, int k, long max_pole, long prec) {
  Pool pool;
  pool.N = chi.modulus();
  pool.k = k;
  pool.max_pole = max_pole;
  pool.precision = prec;
  pool.divisor.level = pool.N;
  const KroneckerChar x = chi.kronecker_form();
  if ((x.is_even() ? 0 : 1) != ((k % 2) + 2) % 2) return pool;  // parity forces A(N,k,chi) = 0

  if (max_pole <= 0) {
    if (k >= 2) {
      auto b = holomorphic_basis(pool.N, k, x, prec);
      pool.holomorphic_weight = k;
      pool.holomorphic_char = x;
      pool.members = std::move(b.forms);
      pool.labels = std::move(b.labels);
    } else if (k == 0 && x.is_trivial()) {
      pool.members.push_back(QSeries::constant(1, prec));
      pool.labels.push_back("1");
    } else if (k == 1) {
      throw std::invalid_argument("weight 1 is not supported");
    }
    return pool;
  }

  auto needs = cusp_pole_bounds(pool.N, max_pole);
  auto D = find_pole_divisor(pool.N, needs, 2 - k, 2 * max_pole * 12 + 24);
  if (!D) throw std::runtime_error("no eta quotient clears poles of order " + std::to_string(max_pole));
  pool.divisor = *D;
  pool.holomorphic_weight = k + static_cast<int>(D->twice_weight() / 2);
  pool.holomorphic_char = char_product(x, *eta_character(*D));
  long v = D->sum_delta_r() / 24;
  auto b = holomorphic_basis(pool.N, pool.holomorphic_weight, pool.holomorphic_char, prec + v);
  EtaQuotient inv = *D;
  for (auto& [d, e] : inv.r) e = -e;
  QSeries invD = eta_expansion(inv, prec);
  for (std::size_t i = 0; i < b.forms.size(); ++i) {
    pool.members.push_back((b.forms[i] * invD).truncated(prec));
    pool.labels.push_back("(" + b.labels[i] + ")/(" + D->to_string() + ")");
  }
  return pool;
}

}  // namespace wmf
