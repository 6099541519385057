#include "rikuna/exact_arith.hpp"

#include <algorithm>
#include <vector>

#include "rikuna/errors.hpp"

namespace rikuna {

std::uint64_t Valuation::value() const {
  if (infinite_) throw DomainError("valuation is infinite");
  return value_;
}

std::string Valuation::to_string() const {
  return infinite_ ? std::string("inf") : std::to_string(value_);
}

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  // 40 Miller-Rabin rounds after GMP's own trial division; for the sizes
  // used here (t^2+t+1 with machine-size t) this is deterministic in practice.
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    if (n % d == 0) return n == d;
  }
  if (n < 289) return true;
  return is_prime(BigInt(static_cast<unsigned long>(n)));
}

Valuation val_p(const BigInt& x, const BigInt& p) {
  if (!is_prime(p)) throw ParameterError("val_p: " + p.get_str() + " is not prime");
  if (x == 0) return Valuation::infinite();
  BigInt rest = x;
  std::uint64_t v = mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
  return Valuation(v);
}

Valuation val_p(const BigInt& x, std::uint64_t p) {
  if (!is_prime(p)) throw ParameterError("val_p: " + std::to_string(p) + " is not prime");
  if (x == 0) return Valuation::infinite();
  BigInt pb(static_cast<unsigned long>(p));
  BigInt rest;
  return Valuation(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), pb.get_mpz_t()));
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BigInt pow_big(const BigInt& base, std::uint64_t e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

std::uint64_t binom_val3(unsigned n, const BigInt& m) {
  BigInt top = pow_big(3, n);
  if (m <= 0 || m >= top) {
    throw ParameterError("binom_val3: m must satisfy 0 < m < 3^n");
  }
  return n - val_p(m, 3).value();
}

int u_seq(std::uint64_t m) {
  static constexpr int kPeriod[6] = {1, 1, 0, -1, -1, 0};
  return kPeriod[m % 6];
}

BigInt e_table(std::uint64_t m, const BigInt& t) {
  switch (m % 6) {
    case 0: return 2 * t + 1;
    case 1: return t;
    case 2: return t - 1;
    case 3: return BigInt(1);
    case 4: return t + 2;
    default: return t + 1;
  }
}

BigInt FactoredInt::value() const {
  BigInt v = sign;
  for (const auto& [p, e] : factors) v *= pow_big(p, e);
  return v * cofactor;
}

std::string FactoredInt::to_string() const {
  if (sign == 0) return "0";
  std::string s = sign < 0 ? "-" : "";
  bool first = true;
  for (const auto& [p, e] : factors) {
    if (!first) s += "*";
    s += p.get_str();
    if (e > 1) s += "^" + std::to_string(e);
    first = false;
  }
  if (cofactor != 1) {
    if (!first) s += "*";
    s += "(" + cofactor.get_str() + ")";
    first = false;
  }
  if (first) s += "1";
  return s;
}

namespace {

// Brent's variant of Pollard rho. Returns a nontrivial factor or 0.
BigInt rho_factor(const BigInt& n, std::uint64_t max_iter, unsigned long c) {
  BigInt y = 2, x, g = 1, q = 1, ys;
  std::uint64_t r = 1, iter = 0;
  const std::uint64_t m = 128;
  auto step = [&](BigInt& v) {
    v = v * v + c;
    v %= n;
  };
  while (g == 1) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) step(y);
    std::uint64_t k = 0;
    while (k < r && g == 1) {
      ys = y;
      for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
        step(y);
        BigInt d = x - y;
        q = (q * abs(d)) % n;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += m;
      iter += m;
      if (iter > max_iter) return 0;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      step(ys);
      BigInt d = x - ys;
      d = abs(d);
      mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g == n ? BigInt(0) : g;
}

void split(const BigInt& n, std::uint64_t max_iter, FactoredInt& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.factors[n] += 1;
    return;
  }
  for (unsigned long c = 1; c <= 8; ++c) {
    BigInt d = rho_factor(n, max_iter, c);
    if (d != 0) {
      split(d, max_iter, out);
      split(n / d, max_iter, out);
      return;
    }
  }
  out.cofactor *= n;
  out.complete = false;
}

}  // namespace

FactoredInt factor_integer(const BigInt& n, std::uint64_t trial_bound,
                           std::uint64_t rho_iterations) {
  FactoredInt out;
  out.sign = sgn(n);
  if (n == 0) return out;
  BigInt rest = abs(n);
  for (std::uint64_t d = 2; d <= trial_bound; d += (d == 2 ? 1 : 2)) {
    if (BigInt(d) * d > rest) break;
    if (mpz_divisible_ui_p(rest.get_mpz_t(), d)) {
      std::uint64_t e = 0;
      while (mpz_divisible_ui_p(rest.get_mpz_t(), d)) {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), d);
        ++e;
      }
      out.factors[BigInt(static_cast<unsigned long>(d))] = e;
    }
  }
  split(rest, rho_iterations, out);
  return out;
}

std::uint64_t to_u64(const BigInt& v) {
  if (v < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64) {
    throw ParameterError("value " + v.get_str() + " does not fit in 64 bits");
  }
  return mpz_get_ui(v.get_mpz_t());
}

std::string to_string(const BigInt& v) { return v.get_str(); }

BigInt parse_bigint(const std::string& text) {
  BigInt v;
  std::string s = text;
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  if (s.empty() || v.set_str(s, 10) != 0) {
    throw ParameterError("not a decimal integer: '" + text + "'");
  }
  return v;
}

BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace rikuna
