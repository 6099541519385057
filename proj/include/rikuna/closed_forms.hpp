#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rikuna/exact_arith.hpp"
#include "rikuna/zpoly.hpp"

namespace rikuna {

/// Discriminant of r_n(x, t; 3) in factored form.
struct DiscClosed {
  int n = 0;
  BigInt t;
  FactoredInt value;  // sign taken from the resultant
  std::uint64_t exponent3 = 0;  // exponent of 3 in the magnitude
};

/// Exact discriminant of a monic polynomial by Sylvester-matrix elimination.
BigInt disc_resultant_oracle(const ZPoly& f);

/// |disc r_n| = 3^(n 3^n + (3^n - 2)(3^n - 1)/2) (t^2 + t + 1)^(3^n - 1).
/// The sign comes from disc_resultant_oracle.
DiscClosed disc_rn_closed(int n, const BigInt& t);

/// Taylor coefficient of r_n(x, t; 3) at x = 1.
struct Coeff3 {
  int n = 0;
  std::uint64_t m = 0;
  BigInt t;
  BigInt value;
  Valuation val3;
};

/// Throws ParameterError unless 0 <= m <= 3^n. Checks the magnitude against
/// C(3^n, m) 3^floor((3^n - m)/2) |e_m(t)| for 0 < m < 3^n.
Coeff3 coeff_a(int n, std::uint64_t m, const BigInt& t);

enum class Index3Branch { TOneMod3, Other };

struct Index3Result {
  int n = 0;
  BigInt t;
  std::uint64_t V = 0;
  BigInt E;
  BigInt ind;
  Index3Branch branch = Index3Branch::Other;
};

Index3Result ind3_closed(int n, const BigInt& t);

/// ((3^n - 1)(v - 1) + gcd(3^n, v) - 1) / 2 with v = nu_p(t^2 + t + 1).
/// Throws ParameterError for p = 3 or composite p, and PreconditionError
/// when p does not divide t^2 + t + 1.
BigInt indp_closed(int n, const BigInt& t, const BigInt& p);

struct PrimeDisc {
  BigInt p;
  std::uint64_t poly_val = 0;    // nu_p(disc r_n)
  BigInt index;                  // nu_p(ind r_n)
  BigInt field_val;              // poly_val - 2 index
  BigInt printed_val;            // exponent in the closed display
  bool mismatch = false;
};

struct DiscReport {
  int n = 0;
  BigInt t;
  DiscClosed poly_disc;
  std::vector<PrimeDisc> primes;  // 3 first, then increasing
  bool complete = true;           // false when t^2 + t + 1 kept a cofactor
  BigInt cofactor = 1;
  std::optional<BigInt> field_disc;    // canonical, when complete
  std::optional<BigInt> printed_disc;  // when complete and all exponents >= 0
  bool discrepancy = false;
};

/// nu_p(disc K_n) = nu_p(disc r_n) - 2 ind_p at 3 and at every prime divisor
/// of t^2 + t + 1, compared with 3^(n 3^n - E/2) prod p^(3^n - gcd(3^n, v_p))
/// taken over the divisors other than 3.
DiscReport field_disc(int n, const BigInt& t);

}  // namespace rikuna
