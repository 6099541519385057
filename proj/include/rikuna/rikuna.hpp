#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rikuna/exact_arith.hpp"
#include "rikuna/finite_field.hpp"
#include "rikuna/zpoly.hpp"

namespace rikuna {

// ---------------------------------------------------------------------------
// l = 3 over the integers (zeta^+ = -1)

/// r_n(x, t; 3) from the closed coefficient sum
///   sum_k C(3^n, k) (t u_{k+2} - u_k) x^k.
/// Level 0 is the seed x - t. Throws ParameterError for n < 0.
ZPoly rikuna_z3(int n, const BigInt& t);

struct ZPQPair {
  ZPoly P;
  ZPoly Q;
};

/// (P_n, Q_n) for l = 3 by n-fold homogeneous composition of
/// P = x^3 - 3x - 1 and Q = 3x^2 + 3x. Independent of rikuna_z3.
ZPQPair pq_pair_z3(int n);

/// P_n - t Q_n from the composition route.
ZPoly rikuna_z3_by_composition(int n, const BigInt& t);

// ---------------------------------------------------------------------------
// Any odd l over a finite field holding zeta^+ (and possibly zeta)

struct PQPair {
  FqPoly P;
  FqPoly Q;
  bool operator==(const PQPair&) const = default;
};

/// The rational map phi(x; l) = P/Q over F_q. Determined by the image of
/// zeta^+; zeta itself is available only when it lies in F_q.
class RikunaMap {
 public:
  /// zeta must have order exactly l in F_q (PreconditionError otherwise).
  static RikunaMap with_zeta(FieldCtx F, std::uint64_t ell, FqElem zeta);
  /// Canonical zeta from find_zeta; requires q = 1 (mod l).
  static RikunaMap canonical(FieldCtx F, std::uint64_t ell);
  /// From the residue of zeta^+. zeta is attached when x^2 - zplus x + 1
  /// splits with roots of order l; otherwise the map works over F_q alone.
  static RikunaMap from_trace(FieldCtx F, std::uint64_t ell, FqElem zplus);
  /// l = 3 over F_p, zeta^+ = -1.
  static RikunaMap shanks(FieldCtx F) { return from_trace(F, 3, F.from_int(-1)); }

  const FieldCtx& field() const { return F_; }
  std::uint64_t ell() const { return ell_; }
  FqElem zeta_plus() const { return zplus_; }
  bool has_zeta() const { return zeta_.has_value(); }
  /// Throws PreconditionError when zeta is not in F_q.
  FqElem zeta() const;
  FqElem zeta_inv() const;

  /// (P_n, Q_n). Computed from the (zeta - based or Chebyshev) closed form
  /// and checked against the homogeneous composition; a disagreement
  /// throws Error.
  PQPair pq(unsigned n) const;
  /// Closed form with zeta; requires has_zeta().
  PQPair pq_closed(unsigned n) const;
  /// Chebyshev expansion in zeta^+ (no zeta needed).
  PQPair pq_chebyshev(unsigned n) const;
  /// n-fold homogeneous composition of the degree-l pair.
  PQPair pq_composed(unsigned n) const;

  /// r_n(x, t; l) = P_n - t Q_n.
  FqPoly rikuna(unsigned n, FqElem t) const;
  static FqPoly rikuna_from_pair(const FieldCtx& F, const PQPair& pq, FqElem t);

  /// phi(a), with phi(inf) = inf and poles mapped to inf.
  PFElem phi(PFElem a) const;

 private:
  RikunaMap(FieldCtx F, std::uint64_t ell, FqElem zplus, std::optional<FqElem> zeta);

  FieldCtx F_;
  std::uint64_t ell_;
  FqElem zplus_;
  std::optional<FqElem> zeta_;
  PQPair level1_;
};

enum class ReductionOutcome { Holds, Fails, Inapplicable };

struct ReductionReport {
  ReductionOutcome outcome = ReductionOutcome::Inapplicable;
  /// "x - t" for the root-of-unity congruence, "x - 1" at the prime 3, or
  /// empty when no hypothesis applies.
  std::string linear_factor;
  std::string detail;
};

/// r_n(x, t; 3) mod p against (x - 1)^{3^n} when p = 3, or (x - t)^{3^n}
/// when p | t^2 + t + 1. Any other prime is reported inapplicable.
ReductionReport reduction_check_z3(int n, const BigInt& t, std::uint64_t p);

/// r_n(x, t; l) over the map's field against (x - t)^{l^n} when t is
/// zeta or zeta^{-1}; inapplicable otherwise.
ReductionReport reduction_check(const RikunaMap& map, unsigned n, FqElem t);

std::string to_string(ReductionOutcome o);

}  // namespace rikuna
