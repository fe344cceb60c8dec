#include "wmf/characters.hpp"

#include <algorithm>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "wmf/arith.hpp"

namespace wmf {

int KroneckerChar::operator()(long n) const { return disc == 1 ? 1 : kronecker(disc, n); }

namespace {

bool is_fundamental(long d) {
  if (d == 1) return true;
  long a = std::labs(d);
  long m4 = ((d % 4) + 4) % 4;
  if (m4 == 1) {
    for (auto [p, e] : factorize(a)) {
      if (e > 1) return false;
    }
    return true;
  }
  if (m4 != 0) return false;
  long m = d / 4;
  long mm = ((m % 4) + 4) % 4;
  if (mm != 2 && mm != 3) return false;
  for (auto [p, e] : factorize(std::labs(m))) {
    if (e > 1) return false;
  }
  return true;
}

long odd_star(long p) { return p % 4 == 1 ? p : -p; }

}  // namespace

std::vector<long> fundamental_discriminants_dividing(long n) {
  std::vector<long> out;
  for (long d : divisors(n)) {
    if (is_fundamental(d)) out.push_back(d);
    if (d > 1 && is_fundamental(-d)) out.push_back(-d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

KroneckerChar char_product(const KroneckerChar& a, const KroneckerChar& b) {
  // The product is attached to the fundamental part of a.disc * b.disc.
  long prod = a.disc * b.disc;
  long sign = prod < 0 ? -1 : 1;
  long core = 1;
  for (auto [p, e] : factorize(prod)) {
    if (e % 2 == 1) core *= static_cast<long>(p);
  }
  for (long c : {core, 4 * core}) {
    if (is_fundamental(sign * c)) return {sign * c};
  }
  throw std::logic_error("char_product: no fundamental discriminant");
}

QuadCharacter::QuadCharacter(long N, int two_part) : N_(N) {
  if (N < 1) throw std::invalid_argument("conductor must be positive");
  if (N == 1) return;
  disc_ = 1;
  for (long p : prime_divisors(N)) {
    int e = valuation(N, p);
    if (p == 2) {
      if (e == 2) {
        disc_ *= -4;
      } else if (e == 3) {
        if (two_part != 8 && two_part != -8) throw std::invalid_argument("two must be +8 or -8");
        two_part_ = two_part;
        disc_ *= two_part;
      } else {
        throw std::invalid_argument("2-part of a quadratic conductor must be 4 or 8");
      }
    } else {
      if (e != 1) throw std::invalid_argument("odd part of the conductor must be squarefree");
      disc_ *= odd_star(p);
    }
    primes_.push_back(p);
  }
}

QuadCharacter QuadCharacter::parse(const std::string& spec) {
  static const std::regex re(R"(\s*N\s*=\s*(\d+)\s*(?:,\s*two\s*=\s*([+-]?8)\s*)?)");
  std::smatch m;
  if (!std::regex_match(spec, m, re)) throw std::invalid_argument("bad character spec: " + spec);
  long N = std::stol(m[1]);
  int two = m[2].matched ? std::stoi(m[2]) : 8;
  if (m[2].matched && valuation(N, 2) != 3) throw std::invalid_argument("two= is only meaningful for 8 || N");
  return QuadCharacter(N, two);
}

std::string QuadCharacter::spec() const {
  std::string s = "N=" + std::to_string(N_);
  if (N_ % 8 == 0) s += two_part_ > 0 ? ",two=+8" : ",two=-8";
  return s;
}

int QuadCharacter::operator()(long n) const { return disc_ == 1 ? 1 : kronecker(disc_, n); }

long QuadCharacter::local_disc(long p) const {
  if (N_ % p != 0 || !is_prime(static_cast<std::uint64_t>(p))) {
    throw std::invalid_argument("local component requested at p not dividing N");
  }
  if (p != 2) return odd_star(p);
  return valuation(N_, 2) == 2 ? -4 : two_part_;
}

long QuadCharacter::local_modulus(long p) const {
  long q = 1;
  long n = N_;
  while (n % p == 0) {
    n /= p;
    q *= p;
  }
  return q;
}

int QuadCharacter::local(long p, long n) const { return kronecker(local_disc(p), n); }

std::vector<SignVector> all_sign_vectors(const QuadCharacter& chi) {
  std::vector<SignVector> out{SignVector{}};
  for (long p : chi.primes()) {
    std::vector<SignVector> next;
    for (int s : {-1, 1}) {
      for (const auto& base : out) {
        SignVector e = base;
        e[p] = s;
        next.push_back(std::move(e));
      }
    }
    out = std::move(next);
  }
  return out;
}

SignVector parse_sign_vector(const QuadCharacter& chi, const std::string& text) {
  std::vector<int> signs;
  std::string t;
  for (char c : text) {
    if (c != ' ' && c != '(' && c != ')' && c != '[' && c != ']') t += c;
  }
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "+1" || item == "1" || item == "+") {
      signs.push_back(1);
    } else if (item == "-1" || item == "-") {
      signs.push_back(-1);
    } else if (!item.empty() && item.find_first_not_of("+-") == std::string::npos) {
      for (char c : item) signs.push_back(c == '+' ? 1 : -1);
    } else {
      throw std::invalid_argument("bad sign vector: " + text);
    }
  }
  const auto& ps = chi.primes();
  if (signs.size() == 1 && ps.size() > 1) signs.assign(ps.size(), signs[0]);
  if (signs.size() != ps.size()) throw std::invalid_argument("sign vector length does not match the primes of N");
  SignVector eps;
  for (std::size_t i = 0; i < ps.size(); ++i) eps[ps[i]] = signs[i];
  return eps;
}

std::string sign_vector_string(const SignVector& eps) {
  if (eps.empty()) return "()";
  if (eps.size() == 1) return eps.begin()->second > 0 ? "+1" : "-1";
  std::string s = "(";
  bool first = true;
  for (auto [p, e] : eps) {
    if (!first) s += ",";
    s += e > 0 ? "1" : "-1";
    first = false;
  }
  return s + ")";
}

SignVector dual_sign(const QuadCharacter& chi, const SignVector& eps) {
  SignVector out;
  for (auto [p, e] : eps) out[p] = chi.local(p, -1) * e;
  return out;
}

long s_factor(long m, long N) {
  long g = m == 0 ? N : gcd(std::labs(m), N);
  if (g == 1) return 1;
  return 1L << prime_divisors(g).size();
}

bool epsilon_allows(const QuadCharacter& chi, const SignVector& eps, long n) {
  for (auto [p, e] : eps) {
    if (chi.local(p, n) == -e) return false;
  }
  return true;
}

}  // namespace wmf
