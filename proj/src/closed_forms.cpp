#include "rikuna/closed_forms.hpp"

#include "rikuna/errors.hpp"
#include "rikuna/rikuna.hpp"

namespace rikuna {

namespace {

BigInt pow3(int n) { return pow_big(3, static_cast<std::uint64_t>(n)); }

void require_level(int n) {
  if (n < 1) throw ParameterError("level n must be at least 1");
  if (n > 12) throw ParameterError("level n too large");
}

BigInt norm_form(const BigInt& t) { return t * t + t + 1; }

}  // namespace

BigInt disc_resultant_oracle(const ZPoly& f) {
  if (!f.is_monic()) throw ParameterError("discriminant oracle needs a monic polynomial");
  return discriminant(f);
}

DiscClosed disc_rn_closed(int n, const BigInt& t) {
  require_level(n);
  DiscClosed out;
  out.n = n;
  out.t = t;
  const std::uint64_t N = to_u64(pow3(n));
  out.exponent3 = static_cast<std::uint64_t>(n) * N + (N - 2) * (N - 1) / 2;

  FactoredInt nf = factor_integer(norm_form(t));
  FactoredInt& v = out.value;
  v.factors[3] = out.exponent3;
  for (const auto& [p, e] : nf.factors) v.factors[p] += e * (N - 1);
  if (!nf.complete) {
    v.complete = false;
    v.cofactor = pow_big(nf.cofactor, N - 1);
  }
  v.sign = sgn(disc_resultant_oracle(rikuna_z3(n, t)));
  return out;
}

Coeff3 coeff_a(int n, std::uint64_t m, const BigInt& t) {
  require_level(n);
  const std::uint64_t N = to_u64(pow3(n));
  if (m > N) throw ParameterError("coefficient index out of range");
  Coeff3 c;
  c.n = n;
  c.m = m;
  c.t = t;
  ZPoly r = rikuna_z3(n, t);
  c.value = m == 0 ? r.eval(1) : r.taylor_shift(1).coeff(m);
  c.val3 = val_p(c.value, 3u);
  if (m > 0 && m < N) {
    BigInt expect = binomial(N, m) * pow_big(3, (N - m) / 2) * abs(e_table(m, t));
    if (abs(c.value) != expect) throw Error("Taylor coefficient disagrees with its product form");
  }
  return c;
}

Index3Result ind3_closed(int n, const BigInt& t) {
  require_level(n);
  Index3Result out;
  out.n = n;
  out.t = t;
  const BigInt N = pow3(n);
  if (mod_floor(t, 3) == 1) {
    out.branch = Index3Branch::TOneMod3;
    Valuation v0 = coeff_a(n, 0, t).val3;
    const std::uint64_t half = to_u64((N + 1) / 2);
    if (v0.is_infinite()) {
      out.V = static_cast<std::uint64_t>(n);
    } else {
      if (v0.value() < half) throw Error("constant coefficient valuation below its lower bound");
      out.V = std::min<std::uint64_t>(v0.value() - half, static_cast<std::uint64_t>(n));
    }
    BigInt e = (N - 1) * (N - 1) + 2 * static_cast<unsigned long>(out.V);
    for (std::uint64_t k = 0; k < out.V; ++k) e += 2 * pow3(n - static_cast<int>(k));
    out.E = e;
  } else {
    out.branch = Index3Branch::Other;
    out.E = (N - 1) * (N - 3);
  }
  if (mod_floor(out.E, 4) != 0) throw Error("E is not divisible by 4");
  out.ind = out.E / 4;
  return out;
}

BigInt indp_closed(int n, const BigInt& t, const BigInt& p) {
  require_level(n);
  if (!is_prime(p)) throw ParameterError("p must be prime");
  if (p == 3) throw ParameterError("use ind3_closed for p = 3");
  Valuation v = val_p(norm_form(t), p);
  if (v.is_infinite() || v.value() == 0)
    throw PreconditionError("p does not divide t^2 + t + 1");
  const BigInt N = pow3(n);
  BigInt vv = static_cast<unsigned long>(v.value());
  BigInt g;
  mpz_gcd(g.get_mpz_t(), N.get_mpz_t(), vv.get_mpz_t());
  return ((N - 1) * (vv - 1) + g - 1) / 2;
}

DiscReport field_disc(int n, const BigInt& t) {
  require_level(n);
  DiscReport rep;
  rep.n = n;
  rep.t = t;
  rep.poly_disc = disc_rn_closed(n, t);
  const BigInt N = pow3(n);
  const FactoredInt& d = rep.poly_disc.value;
  rep.complete = d.complete;
  if (!d.complete) rep.cofactor = factor_integer(norm_form(t)).cofactor;

  Index3Result i3 = ind3_closed(n, t);
  bool printed_ok = true;
  for (const auto& [p, e] : d.factors) {
    PrimeDisc pd;
    pd.p = p;
    pd.poly_val = e;
    if (p == 3) {
      pd.index = i3.ind;
      pd.printed_val = BigInt(n) * N - i3.E / 2;
    } else {
      pd.index = indp_closed(n, t, p);
      BigInt v = static_cast<unsigned long>(e) / (N - 1);
      BigInt g;
      mpz_gcd(g.get_mpz_t(), N.get_mpz_t(), v.get_mpz_t());
      pd.printed_val = N - g;
    }
    pd.field_val = BigInt(static_cast<unsigned long>(e)) - 2 * pd.index;
    if (pd.field_val < 0) throw Error("negative field discriminant valuation");
    pd.mismatch = pd.printed_val != pd.field_val;
    rep.discrepancy = rep.discrepancy || pd.mismatch;
    if (pd.printed_val < 0) printed_ok = false;
    rep.primes.push_back(std::move(pd));
  }
  if (rep.complete) {
    BigInt canon = d.sign, printed = 1;
    for (const PrimeDisc& pd : rep.primes) {
      canon *= pow_big(pd.p, to_u64(pd.field_val));
      if (printed_ok) printed *= pow_big(pd.p, to_u64(pd.printed_val));
    }
    rep.field_disc = canon;
    if (printed_ok) rep.printed_disc = printed;
  }
  return rep;
}

}  // namespace rikuna
