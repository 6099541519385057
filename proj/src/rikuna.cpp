#include "rikuna/rikuna.hpp"

#include <vector>

#include "rikuna/errors.hpp"

namespace rikuna {

namespace {

std::uint64_t checked_level_degree(std::uint64_t ell, unsigned n) {
  std::uint64_t d = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (d > (1ULL << 24) / ell) throw ParameterError("l^n is too large");
    d *= ell;
  }
  return d;
}

}  // namespace

ZPoly rikuna_z3(int n, const BigInt& t) {
  if (n < 0) throw ParameterError("rikuna_z3: level must be nonnegative");
  if (n == 0) return ZPoly::linear_root(t);
  const std::uint64_t N = checked_level_degree(3, static_cast<unsigned>(n));
  std::vector<BigInt> c(N + 1);
  for (std::uint64_t k = 0; k <= N; ++k) {
    c[k] = binomial(N, k) * (t * u_seq(k + 2) - u_seq(k));
  }
  return ZPoly(std::move(c));
}

ZPQPair pq_pair_z3(int n) {
  if (n < 0) throw ParameterError("pq_pair_z3: level must be nonnegative");
  ZPoly P = ZPoly::monomial(1, 1);
  ZPoly Q = ZPoly::constant(1);
  for (int level = 0; level < n; ++level) {
    // P_h(X, Y) = X^3 - 3 X Y^2 - Y^3,  Q_h(X, Y) = 3 X^2 Y + 3 X Y^2.
    const ZPoly P2 = P * P, Q2 = Q * Q;
    const ZPoly nextP = P2 * P - (P * Q2) * BigInt(3) - Q2 * Q;
    const ZPoly nextQ = (P2 * Q) * BigInt(3) + (P * Q2) * BigInt(3);
    P = nextP;
    Q = nextQ;
  }
  return {P, Q};
}

ZPoly rikuna_z3_by_composition(int n, const BigInt& t) {
  ZPQPair pq = pq_pair_z3(n);
  return pq.P - pq.Q * t;
}

// ---------------------------------------------------------------------------

RikunaMap::RikunaMap(FieldCtx F, std::uint64_t ell, FqElem zplus, std::optional<FqElem> zeta)
    : F_(std::move(F)), ell_(ell), zplus_(zplus), zeta_(zeta) {
  if (ell_ < 3 || ell_ % 2 == 0) throw ParameterError("l must be an odd integer > 2");
  if (F_.p() == ell_) throw ParameterError("characteristic must differ from l");
  level1_ = pq_chebyshev(1);
}

RikunaMap RikunaMap::with_zeta(FieldCtx F, std::uint64_t ell, FqElem zeta) {
  if (zeta.code == 0 || F.element_order(zeta) != ell) {
    throw PreconditionError("designated zeta " + F.to_string(zeta) + " does not have order " +
                            std::to_string(ell));
  }
  const FqElem zplus = F.add(zeta, F.inv(zeta));
  return RikunaMap(std::move(F), ell, zplus, zeta);
}

RikunaMap RikunaMap::canonical(FieldCtx F, std::uint64_t ell) {
  const auto [zeta, zinv] = find_zeta(F, ell);
  (void)zinv;
  return with_zeta(std::move(F), ell, zeta);
}

RikunaMap RikunaMap::from_trace(FieldCtx F, std::uint64_t ell, FqElem zplus) {
  std::optional<FqElem> zeta;
  try {
    zeta = zeta_from_zeta_plus(F, zplus, ell).first;
  } catch (const DomainError&) {
    // zeta lives in the quadratic extension; the map is still defined.
    const FqPoly quad{{F.one(), F.neg(zplus), F.one()}};
    if (!fqpoly::is_irreducible(F, quad)) throw;
    QuadraticExtension E(F, zplus);
    if (E.element_order(E.y()) != ell) {
      throw DomainError("zeta^+ = " + F.to_string(zplus) + " is not the trace of an element of order " +
                        std::to_string(ell));
    }
  }
  return RikunaMap(std::move(F), ell, zplus, zeta);
}

FqElem RikunaMap::zeta() const {
  if (!zeta_) {
    throw PreconditionError("zeta is not rational over F_" + std::to_string(F_.q()));
  }
  return *zeta_;
}

FqElem RikunaMap::zeta_inv() const { return F_.inv(zeta()); }

PQPair RikunaMap::pq_closed(unsigned n) const {
  const FieldCtx& F = F_;
  const std::uint64_t N = checked_level_degree(ell_, n);
  const FqElem z = zeta(), zi = zeta_inv();
  const FqPoly A = fqpoly::pow(F, fqpoly::linear_root(F, z), N);
  const FqPoly B = fqpoly::pow(F, fqpoly::linear_root(F, zi), N);
  const FqElem scale = F.inv(F.sub(zi, z));
  PQPair out;
  out.P = fqpoly::scale(F, fqpoly::sub(F, fqpoly::scale(F, A, zi), fqpoly::scale(F, B, z)), scale);
  out.Q = fqpoly::scale(F, fqpoly::sub(F, A, B), scale);
  return out;
}

PQPair RikunaMap::pq_chebyshev(unsigned n) const {
  const FieldCtx& F = F_;
  const std::uint64_t N = checked_level_degree(ell_, n);
  // U[k + 2] holds U_k(zeta^+), k = -2 .. N.
  std::vector<FqElem> U(N + 3);
  U[0] = F.neg(F.one());
  U[1] = F.zero();
  for (std::uint64_t k = 2; k < N + 3; ++k) U[k] = F.sub(F.mul(zplus_, U[k - 1]), U[k - 2]);
  PQPair out;
  out.P.c.assign(N + 1, F.zero());
  out.Q.c.assign(N + 1, F.zero());
  for (std::uint64_t k = 0; k <= N; ++k) {
    FqElem b = F.from_bigint(binomial(N, k));
    if (k % 2 == 0) b = F.neg(b);  // (-1)^{k+1}
    out.P.c[N - k] = F.mul(b, U[k]);
    out.Q.c[N - k] = F.mul(b, U[k + 1]);
  }
  fqpoly::trim(out.P);
  fqpoly::trim(out.Q);
  return out;
}

PQPair RikunaMap::pq_composed(unsigned n) const {
  const FieldCtx& F = F_;
  PQPair cur{fqpoly::x(), fqpoly::constant(F.one())};
  const std::size_t l = static_cast<std::size_t>(ell_);
  for (unsigned level = 0; level < n; ++level) {
    std::vector<FqPoly> Ppow(l + 1), Qpow(l + 1);
    Ppow[0] = Qpow[0] = fqpoly::constant(F.one());
    for (std::size_t i = 1; i <= l; ++i) {
      Ppow[i] = fqpoly::mul(F, Ppow[i - 1], cur.P);
      Qpow[i] = fqpoly::mul(F, Qpow[i - 1], cur.Q);
    }
    PQPair next;
    for (std::size_t i = 0; i <= l; ++i) {
      const FqElem pi = i < level1_.P.c.size() ? level1_.P.c[i] : F.zero();
      const FqElem qi = i < level1_.Q.c.size() ? level1_.Q.c[i] : F.zero();
      if (pi.code == 0 && qi.code == 0) continue;
      const FqPoly term = fqpoly::mul(F, Ppow[i], Qpow[l - i]);
      if (pi.code) next.P = fqpoly::add(F, next.P, fqpoly::scale(F, term, pi));
      if (qi.code) next.Q = fqpoly::add(F, next.Q, fqpoly::scale(F, term, qi));
    }
    cur = std::move(next);
  }
  return cur;
}

PQPair RikunaMap::pq(unsigned n) const {
  PQPair primary = has_zeta() ? pq_closed(n) : pq_chebyshev(n);
  if (primary != pq_composed(n)) {
    throw Error("P_n/Q_n closed form disagrees with homogeneous composition at level " +
                std::to_string(n));
  }
  return primary;
}

FqPoly RikunaMap::rikuna_from_pair(const FieldCtx& F, const PQPair& pq, FqElem t) {
  return fqpoly::sub(F, pq.P, fqpoly::scale(F, pq.Q, t));
}

FqPoly RikunaMap::rikuna(unsigned n, FqElem t) const {
  if (n == 0) return fqpoly::linear_root(F_, t);
  return rikuna_from_pair(F_, pq(n), t);
}

PFElem RikunaMap::phi(PFElem a) const {
  if (a.is_infinity()) return a;
  const FqElem x = a.value();
  const FqElem den = fqpoly::eval(F_, level1_.Q, x);
  if (den.code == 0) return PFElem::infinity();
  return PFElem::finite(F_.div(fqpoly::eval(F_, level1_.P, x), den));
}

// ---------------------------------------------------------------------------

std::string to_string(ReductionOutcome o) {
  switch (o) {
    case ReductionOutcome::Holds: return "holds";
    case ReductionOutcome::Fails: return "fails";
    default: return "inapplicable";
  }
}

ReductionReport reduction_check_z3(int n, const BigInt& t, std::uint64_t p) {
  if (!is_prime(p)) throw ParameterError("reduction_check: modulus must be prime");
  ReductionReport rep;
  BigInt root;
  if (p == 3) {
    rep.linear_factor = "x - 1";
    root = 1;
  } else if (mpz_divisible_ui_p(BigInt(t * t + t + 1).get_mpz_t(), p)) {
    rep.linear_factor = "x - t";
    root = t;
  } else {
    rep.detail = std::to_string(p) + " is neither 3 nor a divisor of t^2+t+1";
    return rep;
  }
  const FieldCtx F = FieldCtx::make(p, 1);
  const std::uint64_t N = checked_level_degree(3, static_cast<unsigned>(n));
  const FqPoly target = fqpoly::pow(F, fqpoly::linear_root(F, F.from_bigint(root)), N);
  const FqPoly got = fqpoly::from_codes(reduce_mod(rikuna_z3(n, t), p));
  rep.outcome = got == target ? ReductionOutcome::Holds : ReductionOutcome::Fails;
  rep.detail = "r_" + std::to_string(n) + " mod " + std::to_string(p) + " vs (" + rep.linear_factor +
               ")^" + std::to_string(N);
  return rep;
}

ReductionReport reduction_check(const RikunaMap& map, unsigned n, FqElem t) {
  ReductionReport rep;
  const FieldCtx& F = map.field();
  if (!map.has_zeta() || (t != map.zeta() && t != map.zeta_inv())) {
    rep.detail = "t is not congruent to zeta^{+-1}";
    return rep;
  }
  rep.linear_factor = "x - t";
  const std::uint64_t N = checked_level_degree(map.ell(), n);
  const FqPoly target = fqpoly::pow(F, fqpoly::linear_root(F, t), N);
  rep.outcome = map.rikuna(n, t) == target ? ReductionOutcome::Holds : ReductionOutcome::Fails;
  rep.detail = "r_" + std::to_string(n) + " vs (x - " + F.to_string(t) + ")^" + std::to_string(N);
  return rep;
}

}  // namespace rikuna
