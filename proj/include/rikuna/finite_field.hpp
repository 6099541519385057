#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "rikuna/exact_arith.hpp"

namespace rikuna {

/// Element of a finite field, stored as its canonical code
/// c_0 + c_1 p + ... + c_{k-1} p^{k-1} where c_i are the coefficients of the
/// reduced representative. Comparing codes is the canonical total order on
/// F_q: lexicographic on (c_{k-1}, ..., c_0), each digit by least
/// nonnegative residue. Elements are only meaningful together with the
/// FieldCtx that produced them.
struct FqElem {
  std::uint64_t code = 0;
  constexpr auto operator<=>(const FqElem&) const = default;
};

/// F_q with q = p^k and a fixed monic irreducible modulus of degree k.
/// Immutable after construction; copies share the lookup tables.
class FieldCtx {
 public:
  /// Uses the least monic irreducible polynomial of degree k under the
  /// canonical order of its lower coefficients. Throws ParameterError for
  /// composite p, k == 0 or q too large to encode.
  static FieldCtx make(std::uint64_t p, unsigned k);
  /// Uses the given monic modulus (constant term first). Irreducibility is
  /// verified; throws ParameterError otherwise.
  static FieldCtx with_modulus(std::uint64_t p, std::vector<std::uint64_t> modulus);

  std::uint64_t p() const { return p_; }
  unsigned k() const { return k_; }
  std::uint64_t q() const { return q_; }
  /// Monic modulus, constant term first; {0, 1} (i.e. x) for prime fields.
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }
  bool is_prime_field() const { return k_ == 1; }

  FqElem zero() const { return {0}; }
  FqElem one() const { return {1}; }
  /// The i-th element in canonical order, 0 <= i < q.
  FqElem element(std::uint64_t i) const { return {i}; }
  FqElem from_int(long long v) const;
  FqElem from_bigint(const BigInt& v) const;
  FqElem from_coeffs(const std::vector<std::uint64_t>& coeffs) const;
  std::vector<std::uint64_t> coeffs(FqElem a) const;

  FqElem add(FqElem a, FqElem b) const;
  FqElem sub(FqElem a, FqElem b) const;
  FqElem neg(FqElem a) const;
  FqElem mul(FqElem a, FqElem b) const;
  /// Throws DomainError for zero.
  FqElem inv(FqElem a) const;
  FqElem div(FqElem a, FqElem b) const { return mul(a, inv(b)); }
  FqElem pow(FqElem a, std::uint64_t e) const;
  FqElem pow(FqElem a, const BigInt& e) const;

  /// Multiplicative order; throws DomainError for zero.
  std::uint64_t element_order(FqElem a) const;
  /// Distinct prime factors of q - 1, ascending.
  const std::vector<std::uint64_t>& unit_group_primes() const { return *unit_primes_; }

  /// "5" for prime fields; "2*a^2+a+3" (a = class of x) otherwise.
  std::string to_string(FqElem a) const;

  bool operator==(const FieldCtx& o) const {
    return p_ == o.p_ && k_ == o.k_ && modulus_ == o.modulus_;
  }

 private:
  struct Tables {
    std::vector<std::uint32_t> exp;   // exp[i] = g^i, length 2(q-1)
    std::vector<std::uint32_t> log;   // log[code], log[0] unused
    std::vector<std::int64_t> zech;   // log(1 + g^i) or -1 when 1 + g^i = 0
  };

  FieldCtx(std::uint64_t p, unsigned k, std::vector<std::uint64_t> modulus);
  FqElem poly_mul(FqElem a, FqElem b) const;
  FqElem digit_add(FqElem a, FqElem b, bool subtract) const;

  std::uint64_t p_ = 0;
  unsigned k_ = 0;
  std::uint64_t q_ = 0;
  std::vector<std::uint64_t> modulus_;
  std::shared_ptr<const Tables> tables_;  // extension fields with small q
  std::shared_ptr<const std::vector<std::uint64_t>> unit_primes_;
};

/// Element of P^1(F_q) = F_q with a single point at infinity.
class PFElem {
 public:
  PFElem() = default;
  static PFElem infinity() {
    PFElem e;
    e.inf_ = true;
    return e;
  }
  static PFElem finite(FqElem a) {
    PFElem e;
    e.value_ = a;
    return e;
  }
  bool is_infinity() const { return inf_; }
  /// Throws DomainError at infinity.
  FqElem value() const;
  /// Vertex index in [0, q]: the element code, q for infinity.
  std::uint64_t index(const FieldCtx& F) const { return inf_ ? F.q() : value_.code; }
  static PFElem from_index(const FieldCtx& F, std::uint64_t i) {
    return i == F.q() ? infinity() : finite(FqElem{i});
  }
  bool operator==(const PFElem&) const = default;

 private:
  FqElem value_{};
  bool inf_ = false;
};

/// Dense polynomial over F_q, constant term first, trailing zeros trimmed.
struct FqPoly {
  std::vector<FqElem> c;

  long degree() const { return static_cast<long>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  bool operator==(const FqPoly&) const = default;
};

namespace fqpoly {

FqPoly from_codes(const std::vector<std::uint64_t>& codes);
FqPoly constant(FqElem a);
/// x - a
FqPoly linear_root(const FieldCtx& F, FqElem a);
FqPoly x();
void trim(FqPoly& f);

FqPoly add(const FieldCtx& F, const FqPoly& a, const FqPoly& b);
FqPoly sub(const FieldCtx& F, const FqPoly& a, const FqPoly& b);
FqPoly scale(const FieldCtx& F, const FqPoly& a, FqElem s);
FqPoly mul(const FieldCtx& F, const FqPoly& a, const FqPoly& b);
/// Quotient and remainder; throws DomainError for a zero divisor.
std::pair<FqPoly, FqPoly> divmod(const FieldCtx& F, const FqPoly& a, const FqPoly& b);
FqPoly rem(const FieldCtx& F, const FqPoly& a, const FqPoly& b);
FqPoly monic(const FieldCtx& F, const FqPoly& a);
/// Monic gcd (zero only when both inputs are zero).
FqPoly gcd(const FieldCtx& F, const FqPoly& a, const FqPoly& b);
FqPoly derivative(const FieldCtx& F, const FqPoly& a);
FqPoly powmod(const FieldCtx& F, const FqPoly& base, const BigInt& e, const FqPoly& mod);
FqElem eval(const FieldCtx& F, const FqPoly& f, FqElem x);
FqPoly pow(const FieldCtx& F, const FqPoly& base, std::uint64_t e);

bool is_squarefree(const FieldCtx& F, const FqPoly& f);
bool is_irreducible(const FieldCtx& F, const FqPoly& f);

std::string to_string(const FieldCtx& F, const FqPoly& f, const char* var = "x");

}  // namespace fqpoly

struct FqFactor {
  FqPoly factor;  // monic irreducible
  unsigned multiplicity = 1;
};

struct FqFactorization {
  FqElem unit;  // leading coefficient
  std::vector<FqFactor> factors;  // sorted by degree, then coefficients
};

constexpr std::uint64_t kDefaultFactorSeed = 0x5eed2014ULL;

/// Complete factorization: squarefree decomposition, distinct-degree
/// splitting, then Cantor-Zassenhaus equal-degree splitting driven by a
/// random stream local to this call. Throws DomainError for zero input.
FqFactorization factor_fq(const FieldCtx& F, const FqPoly& f,
                          std::uint64_t seed = kDefaultFactorSeed);

/// One entry per (irreducible degree, multiplicity) with the number of
/// irreducible factors of that shape. Only squarefree and distinct-degree
/// stages are run.
struct DegreeCount {
  unsigned degree = 0;
  unsigned multiplicity = 1;
  std::uint64_t count = 0;
  auto operator<=>(const DegreeCount&) const = default;
};
std::vector<DegreeCount> degree_profile(const FieldCtx& F, const FqPoly& f);

/// (zeta, zeta^{-1}) with zeta the least element of order exactly l.
/// Throws PreconditionError when q != 1 (mod l).
std::pair<FqElem, FqElem> find_zeta(const FieldCtx& F, std::uint64_t ell);

/// Roots of x^2 - zplus x + 1, smaller first. Throws DomainError when the
/// quadratic is irreducible or its roots do not have order l.
std::pair<FqElem, FqElem> zeta_from_zeta_plus(const FieldCtx& F, FqElem zplus,
                                              std::uint64_t ell);

/// F_q(zeta) = F_q[y]/(y^2 - s y + 1) for the case where that quadratic is
/// irreducible over F_q; y plays the role of zeta.
class QuadraticExtension {
 public:
  struct Elem {
    FqElem a, b;  // a + b*y
    bool operator==(const Elem&) const = default;
  };
  /// Throws DomainError if y^2 - s y + 1 has a root in F_q.
  QuadraticExtension(FieldCtx base, FqElem trace);

  const FieldCtx& base() const { return base_; }
  Elem embed(FqElem a) const { return {a, base_.zero()}; }
  Elem y() const { return {base_.zero(), base_.one()}; }
  Elem one() const { return {base_.one(), base_.zero()}; }
  Elem add(Elem u, Elem v) const;
  Elem sub(Elem u, Elem v) const;
  Elem mul(Elem u, Elem v) const;
  Elem inv(Elem u) const;
  Elem pow(Elem u, std::uint64_t e) const;
  bool is_zero(Elem u) const { return u.a.code == 0 && u.b.code == 0; }
  std::uint64_t element_order(Elem u) const;

 private:
  FieldCtx base_;
  FqElem trace_;
  std::vector<std::uint64_t> group_primes_;  // primes of q^2 - 1
};

/// Distinct prime factors of n by trial division.
std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n);

/// Order of g in a group of order `group_order` with the given prime
/// divisors, via repeated division of the exponent.
template <typename IsOne, typename PowFn>
std::uint64_t order_from_group(std::uint64_t group_order,
                               const std::vector<std::uint64_t>& primes, IsOne is_one,
                               PowFn pow_fn) {
  std::uint64_t e = group_order;
  for (std::uint64_t r : primes) {
    while (e % r == 0 && is_one(pow_fn(e / r))) e /= r;
  }
  return e;
}

}  // namespace rikuna
