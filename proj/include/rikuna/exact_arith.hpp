#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace rikuna {

using BigInt = mpz_class;

/// p-adic valuation. The zero element has infinite valuation, which is kept
/// as a distinct state rather than a large sentinel.
class Valuation {
 public:
  constexpr Valuation() = default;
  constexpr explicit Valuation(std::uint64_t v) : value_(v) {}
  static constexpr Valuation infinite() {
    Valuation v;
    v.infinite_ = true;
    return v;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }
  /// Finite value; throws DomainError when infinite.
  std::uint64_t value() const;

  constexpr bool operator==(const Valuation&) const = default;
  constexpr std::strong_ordering operator<=>(const Valuation& o) const {
    if (infinite_ || o.infinite_) {
      return infinite_ == o.infinite_ ? std::strong_ordering::equal
             : infinite_              ? std::strong_ordering::greater
                                      : std::strong_ordering::less;
    }
    return value_ <=> o.value_;
  }

  std::string to_string() const;

 private:
  std::uint64_t value_ = 0;
  bool infinite_ = false;
};

bool is_prime(const BigInt& n);
bool is_prime(std::uint64_t n);

/// nu_p(x). Throws ParameterError when p is not prime.
Valuation val_p(const BigInt& x, const BigInt& p);
Valuation val_p(const BigInt& x, std::uint64_t p);

BigInt binomial(std::uint64_t n, std::uint64_t k);
BigInt pow_big(const BigInt& base, std::uint64_t e);

/// nu_3(C(3^n, m)) = n - nu_3(m) for 0 < m < 3^n.
std::uint64_t binom_val3(unsigned n, const BigInt& m);

/// u_m = U_m(1), Chebyshev polynomial of the second kind at 1. Period 6.
int u_seq(std::uint64_t m);

/// The six-case table e_m(t): 2t+1, t, t-1, 1, t+2, t+1 by m mod 6.
BigInt e_table(std::uint64_t m, const BigInt& t);

/// Integer with its prime factorization. When factoring gave up on a
/// composite remainder it is kept in `cofactor` and `complete` is false.
struct FactoredInt {
  int sign = 0;  // -1, 0 or +1
  std::map<BigInt, std::uint64_t> factors;
  BigInt cofactor = 1;
  bool complete = true;

  /// sign * prod p^e * cofactor.
  BigInt value() const;
  std::string to_string() const;
};

/// Trial division up to `trial_bound`, then Pollard rho (Brent) on the rest.
/// Remainders that are still composite after `rho_iterations` steps are
/// flagged as an unfactored cofactor.
FactoredInt factor_integer(const BigInt& n, std::uint64_t trial_bound = 100000,
                           std::uint64_t rho_iterations = 2000000);

std::uint64_t to_u64(const BigInt& v);
std::string to_string(const BigInt& v);
BigInt parse_bigint(const std::string& text);

/// Canonical residue in [0, m).
BigInt mod_floor(const BigInt& a, const BigInt& m);

}  // namespace rikuna
