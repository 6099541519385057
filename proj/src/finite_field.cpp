#include "rikuna/finite_field.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "rikuna/errors.hpp"

namespace rikuna {

namespace {

constexpr std::uint64_t kTableLimit = 1ULL << 20;
constexpr std::uint64_t kMaxPrime = 1ULL << 32;

std::uint64_t checked_power(std::uint64_t p, unsigned k) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (q > (1ULL << 62) / p) throw ParameterError("field order p^k does not fit in 62 bits");
    q *= p;
  }
  return q;
}

std::uint64_t inv_mod_prime(std::uint64_t a, std::uint64_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a);
  while (new_r != 0) {
    std::int64_t quo = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - quo * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - quo * new_r);
  }
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

}  // namespace

std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n < 2) return out;
  FactoredInt f = factor_integer(BigInt(static_cast<unsigned long>(n)));
  if (!f.complete) throw Error("could not factor " + std::to_string(n));
  for (const auto& [prime, e] : f.factors) out.push_back(to_u64(prime));
  return out;
}

// ---------------------------------------------------------------------------
// FieldCtx

FieldCtx::FieldCtx(std::uint64_t p, unsigned k, std::vector<std::uint64_t> modulus)
    : p_(p), k_(k), q_(checked_power(p, k)), modulus_(std::move(modulus)) {
  unit_primes_ = std::make_shared<const std::vector<std::uint64_t>>(prime_factors_u64(q_ - 1));
  if (k_ == 1 || q_ > kTableLimit) return;

  // Find the least primitive element, then tabulate discrete logs.
  const std::uint64_t n = q_ - 1;
  FqElem g{};
  for (std::uint64_t c = 1; c < q_; ++c) {
    FqElem cand{c};
    bool primitive = true;
    for (std::uint64_t r : *unit_primes_) {
      FqElem acc = one(), base = cand;
      for (std::uint64_t e = n / r; e; e >>= 1) {
        if (e & 1) acc = poly_mul(acc, base);
        base = poly_mul(base, base);
      }
      if (acc == one()) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      g = cand;
      break;
    }
  }
  auto t = std::make_shared<Tables>();
  t->exp.resize(2 * n);
  t->log.assign(q_, 0);
  FqElem cur = one();
  for (std::uint64_t i = 0; i < n; ++i) {
    t->exp[i] = t->exp[i + n] = static_cast<std::uint32_t>(cur.code);
    t->log[cur.code] = static_cast<std::uint32_t>(i);
    cur = poly_mul(cur, g);
  }
  t->zech.resize(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    FqElem s = digit_add(FqElem{t->exp[i]}, one(), false);
    t->zech[i] = s.code == 0 ? -1 : static_cast<std::int64_t>(t->log[s.code]);
  }
  tables_ = std::move(t);
}

FieldCtx FieldCtx::make(std::uint64_t p, unsigned k) {
  if (!is_prime(p)) throw ParameterError("make_field: " + std::to_string(p) + " is not prime");
  if (p >= kMaxPrime) throw ParameterError("make_field: characteristic must be below 2^32");
  if (k == 0) throw ParameterError("make_field: extension degree must be at least 1");
  if (k == 1) return FieldCtx(p, 1, {0, 1});
  const std::uint64_t span = checked_power(p, k);
  FieldCtx prime = make(p, 1);
  for (std::uint64_t c = 0; c < span; ++c) {
    std::vector<std::uint64_t> m(k + 1);
    std::uint64_t rest = c;
    for (unsigned i = 0; i < k; ++i) {
      m[i] = rest % p;
      rest /= p;
    }
    m[k] = 1;
    if (m[0] == 0) continue;
    if (fqpoly::is_irreducible(prime, fqpoly::from_codes(m))) return FieldCtx(p, k, std::move(m));
  }
  throw Error("no irreducible polynomial found");  // unreachable for prime p
}

FieldCtx FieldCtx::with_modulus(std::uint64_t p, std::vector<std::uint64_t> modulus) {
  if (!is_prime(p)) throw ParameterError("field modulus: " + std::to_string(p) + " is not prime");
  if (p >= kMaxPrime) throw ParameterError("field modulus: characteristic must be below 2^32");
  for (auto& c : modulus) c %= p;
  while (!modulus.empty() && modulus.back() == 0) modulus.pop_back();
  if (modulus.size() < 2 || modulus.back() != 1) {
    throw ParameterError("field modulus must be monic of degree >= 1");
  }
  const unsigned k = static_cast<unsigned>(modulus.size() - 1);
  if (k == 1) {
    // F_p[x]/(x - c) is F_p; keep the canonical prime-field encoding.
    return FieldCtx(p, 1, {0, 1});
  }
  if (!fqpoly::is_irreducible(make(p, 1), fqpoly::from_codes(modulus))) {
    throw ParameterError("field modulus is reducible over F_" + std::to_string(p));
  }
  return FieldCtx(p, k, std::move(modulus));
}

FqElem FieldCtx::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += static_cast<long long>(p_);
  return {static_cast<std::uint64_t>(r)};
}

FqElem FieldCtx::from_bigint(const BigInt& v) const {
  return {mpz_fdiv_ui(v.get_mpz_t(), p_)};
}

FqElem FieldCtx::from_coeffs(const std::vector<std::uint64_t>& coeffs) const {
  // Reduce modulo the modulus first if the input is long.
  std::vector<std::uint64_t> r(coeffs.begin(), coeffs.end());
  for (auto& c : r) c %= p_;
  for (std::size_t i = r.size(); i-- > k_;) {
    const std::uint64_t lead = r[i];
    if (lead == 0) continue;
    for (unsigned j = 0; j <= k_; ++j) {
      const std::uint64_t sub = lead * modulus_[j] % p_;
      auto& dst = r[i - k_ + j];
      dst = (dst + p_ - sub) % p_;
    }
  }
  std::uint64_t code = 0;
  for (unsigned i = std::min<std::size_t>(k_, r.size()); i-- > 0;) code = code * p_ + r[i];
  return {code};
}

std::vector<std::uint64_t> FieldCtx::coeffs(FqElem a) const {
  std::vector<std::uint64_t> out(k_);
  for (unsigned i = 0; i < k_; ++i) {
    out[i] = a.code % p_;
    a.code /= p_;
  }
  return out;
}

FqElem FieldCtx::digit_add(FqElem a, FqElem b, bool subtract) const {
  std::uint64_t code = 0, scale = 1;
  for (unsigned i = 0; i < k_; ++i) {
    const std::uint64_t x = a.code % p_, y = b.code % p_;
    a.code /= p_;
    b.code /= p_;
    const std::uint64_t d = subtract ? (x + p_ - y) % p_ : (x + y) % p_;
    code += d * scale;
    scale *= p_;
  }
  return {code};
}

FqElem FieldCtx::poly_mul(FqElem a, FqElem b) const {
  const auto x = coeffs(a), y = coeffs(b);
  std::vector<std::uint64_t> r(2 * k_ - 1, 0);
  for (unsigned i = 0; i < k_; ++i) {
    if (x[i] == 0) continue;
    for (unsigned j = 0; j < k_; ++j) r[i + j] = (r[i + j] + x[i] * y[j]) % p_;
  }
  return from_coeffs(r);
}

FqElem FieldCtx::add(FqElem a, FqElem b) const {
  if (k_ == 1) {
    std::uint64_t s = a.code + b.code;
    return {s >= p_ ? s - p_ : s};
  }
  if (!tables_) return digit_add(a, b, false);
  if (a.code == 0) return b;
  if (b.code == 0) return a;
  const auto& t = *tables_;
  const std::uint64_t n = q_ - 1;
  const std::uint64_t la = t.log[a.code], lb = t.log[b.code];
  const std::int64_t z = t.zech[lb >= la ? lb - la : lb + n - la];
  if (z < 0) return {0};
  return {t.exp[la + static_cast<std::uint64_t>(z)]};
}

FqElem FieldCtx::neg(FqElem a) const {
  if (a.code == 0) return a;
  if (k_ == 1) return {p_ - a.code};
  if (!tables_) return digit_add(zero(), a, true);
  if (p_ == 2) return a;
  const auto& t = *tables_;
  return {t.exp[t.log[a.code] + (q_ - 1) / 2]};
}

FqElem FieldCtx::sub(FqElem a, FqElem b) const {
  if (k_ == 1) return {a.code >= b.code ? a.code - b.code : a.code + p_ - b.code};
  if (!tables_) return digit_add(a, b, true);
  return add(a, neg(b));
}

FqElem FieldCtx::mul(FqElem a, FqElem b) const {
  if (k_ == 1) return {a.code * b.code % p_};
  if (a.code == 0 || b.code == 0) return {0};
  if (!tables_) return poly_mul(a, b);
  const auto& t = *tables_;
  return {t.exp[t.log[a.code] + t.log[b.code]]};
}

FqElem FieldCtx::inv(FqElem a) const {
  if (a.code == 0) throw DomainError("inverse of zero in F_" + std::to_string(q_));
  if (k_ == 1) return {inv_mod_prime(a.code, p_)};
  if (tables_) {
    const auto& t = *tables_;
    const std::uint64_t la = t.log[a.code];
    return {t.exp[la == 0 ? 0 : q_ - 1 - la]};
  }
  return pow(a, q_ - 2);
}

FqElem FieldCtx::pow(FqElem a, std::uint64_t e) const {
  FqElem acc = one();
  while (e) {
    if (e & 1) acc = mul(acc, a);
    a = mul(a, a);
    e >>= 1;
  }
  return acc;
}

FqElem FieldCtx::pow(FqElem a, const BigInt& e) const {
  if (a.code == 0) {
    if (e < 0) throw DomainError("negative power of zero");
    return e == 0 ? one() : zero();
  }
  return pow(a, to_u64(mod_floor(e, BigInt(static_cast<unsigned long>(q_ - 1)))));
}

std::uint64_t FieldCtx::element_order(FqElem a) const {
  if (a.code == 0) throw DomainError("element_order: zero has no multiplicative order");
  return order_from_group(
      q_ - 1, *unit_primes_, [&](FqElem v) { return v == one(); },
      [&](std::uint64_t e) { return pow(a, e); });
}

std::string FieldCtx::to_string(FqElem a) const {
  if (k_ == 1) return std::to_string(a.code);
  const auto c = coeffs(a);
  std::string s;
  for (unsigned i = k_; i-- > 0;) {
    if (c[i] == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0 || c[i] != 1) s += std::to_string(c[i]);
    if (i >= 1) {
      if (c[i] != 1) s += "*";
      s += "a";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s.empty() ? "0" : s;
}

FqElem PFElem::value() const {
  if (inf_) throw DomainError("the point at infinity has no finite value");
  return value_;
}

// ---------------------------------------------------------------------------
// Polynomials

namespace fqpoly {

FqPoly from_codes(const std::vector<std::uint64_t>& codes) {
  FqPoly f;
  f.c.reserve(codes.size());
  for (auto c : codes) f.c.push_back(FqElem{c});
  trim(f);
  return f;
}

FqPoly constant(FqElem a) {
  FqPoly f{{a}};
  trim(f);
  return f;
}

FqPoly linear_root(const FieldCtx& F, FqElem a) { return FqPoly{{F.neg(a), F.one()}}; }

FqPoly x() { return FqPoly{{FqElem{0}, FqElem{1}}}; }

void trim(FqPoly& f) {
  while (!f.c.empty() && f.c.back().code == 0) f.c.pop_back();
}

FqPoly add(const FieldCtx& F, const FqPoly& a, const FqPoly& b) {
  FqPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()));
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    const FqElem x = i < a.c.size() ? a.c[i] : F.zero();
    const FqElem y = i < b.c.size() ? b.c[i] : F.zero();
    r.c[i] = F.add(x, y);
  }
  trim(r);
  return r;
}

FqPoly sub(const FieldCtx& F, const FqPoly& a, const FqPoly& b) {
  FqPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()));
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    const FqElem x = i < a.c.size() ? a.c[i] : F.zero();
    const FqElem y = i < b.c.size() ? b.c[i] : F.zero();
    r.c[i] = F.sub(x, y);
  }
  trim(r);
  return r;
}

FqPoly scale(const FieldCtx& F, const FqPoly& a, FqElem s) {
  FqPoly r = a;
  for (auto& c : r.c) c = F.mul(c, s);
  trim(r);
  return r;
}

namespace {

// Small primes allow delayed reduction: p^2 * (terms) stays below 2^64.
bool lazy_prime(const FieldCtx& F) { return F.is_prime_field() && F.p() < (1ULL << 20); }

}  // namespace

FqPoly mul(const FieldCtx& F, const FqPoly& a, const FqPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  FqPoly r;
  const std::size_t n = a.c.size() + b.c.size() - 1;
  if (lazy_prime(F)) {
    std::vector<std::uint64_t> acc(n, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
      const std::uint64_t x = a.c[i].code;
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.c.size(); ++j) acc[i + j] += x * b.c[j].code;
    }
    r.c.resize(n);
    for (std::size_t i = 0; i < n; ++i) r.c[i] = FqElem{acc[i] % F.p()};
  } else {
    r.c.assign(n, F.zero());
    for (std::size_t i = 0; i < a.c.size(); ++i) {
      if (a.c[i].code == 0) continue;
      for (std::size_t j = 0; j < b.c.size(); ++j) {
        r.c[i + j] = F.add(r.c[i + j], F.mul(a.c[i], b.c[j]));
      }
    }
  }
  trim(r);
  return r;
}

std::pair<FqPoly, FqPoly> divmod(const FieldCtx& F, const FqPoly& a, const FqPoly& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (a.degree() < b.degree()) return {FqPoly{}, a};
  const std::size_t db = static_cast<std::size_t>(b.degree());
  const FqElem lead_inv = F.inv(b.c.back());
  FqPoly q;
  q.c.assign(a.c.size() - db, F.zero());
  FqPoly r;
  if (lazy_prime(F)) {
    const std::uint64_t p = F.p();
    std::vector<std::uint64_t> acc(a.c.size());
    for (std::size_t i = 0; i < a.c.size(); ++i) acc[i] = a.c[i].code;
    std::vector<std::uint64_t> negb(db + 1);
    for (std::size_t j = 0; j <= db; ++j) negb[j] = (p - b.c[j].code) % p;
    for (std::size_t i = a.c.size(); i-- > db;) {
      const std::uint64_t lead = (acc[i] % p) * lead_inv.code % p;
      q.c[i - db] = FqElem{lead};
      if (lead == 0) continue;
      for (std::size_t j = 0; j < db; ++j) acc[i - db + j] += lead * negb[j];
    }
    r.c.resize(db);
    for (std::size_t j = 0; j < db; ++j) r.c[j] = FqElem{acc[j] % p};
  } else {
    r = a;
    for (std::size_t i = a.c.size(); i-- > db;) {
      const FqElem lead = F.mul(r.c[i], lead_inv);
      q.c[i - db] = lead;
      if (lead.code == 0) continue;
      for (std::size_t j = 0; j <= db; ++j) {
        r.c[i - db + j] = F.sub(r.c[i - db + j], F.mul(lead, b.c[j]));
      }
    }
    r.c.resize(db);
  }
  trim(q);
  trim(r);
  return {q, r};
}

FqPoly rem(const FieldCtx& F, const FqPoly& a, const FqPoly& b) { return divmod(F, a, b).second; }

FqPoly monic(const FieldCtx& F, const FqPoly& a) {
  if (a.is_zero()) return a;
  return scale(F, a, F.inv(a.c.back()));
}

FqPoly gcd(const FieldCtx& F, const FqPoly& a, const FqPoly& b) {
  FqPoly x = a, y = b;
  while (!y.is_zero()) {
    FqPoly r = rem(F, x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return monic(F, x);
}

FqPoly derivative(const FieldCtx& F, const FqPoly& a) {
  if (a.c.size() <= 1) return {};
  FqPoly d;
  d.c.resize(a.c.size() - 1);
  for (std::size_t i = 1; i < a.c.size(); ++i) {
    d.c[i - 1] = F.mul(a.c[i], F.from_int(static_cast<long long>(i % F.p())));
  }
  trim(d);
  return d;
}

FqPoly powmod(const FieldCtx& F, const FqPoly& base, const BigInt& e, const FqPoly& mod) {
  if (e < 0) throw ParameterError("powmod: negative exponent");
  FqPoly acc = rem(F, constant(F.one()), mod);
  FqPoly b = rem(F, base, mod);
  const std::size_t bits = e == 0 ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    acc = rem(F, mul(F, acc, acc), mod);
    if (mpz_tstbit(e.get_mpz_t(), i)) acc = rem(F, mul(F, acc, b), mod);
  }
  return acc;
}

FqPoly pow(const FieldCtx& F, const FqPoly& base, std::uint64_t e) {
  FqPoly acc = constant(F.one()), b = base;
  while (e) {
    if (e & 1) acc = mul(F, acc, b);
    e >>= 1;
    if (e) b = mul(F, b, b);
  }
  return acc;
}

FqElem eval(const FieldCtx& F, const FqPoly& f, FqElem x) {
  FqElem acc = F.zero();
  for (auto it = f.c.rbegin(); it != f.c.rend(); ++it) acc = F.add(F.mul(acc, x), *it);
  return acc;
}

bool is_squarefree(const FieldCtx& F, const FqPoly& f) {
  if (f.is_zero()) return false;
  return gcd(F, f, derivative(F, f)).degree() == 0;
}

bool is_irreducible(const FieldCtx& F, const FqPoly& f) {
  const long n = f.degree();
  if (n <= 0) return false;
  if (n == 1) return true;
  const FqPoly g = monic(F, f);
  const BigInt q(static_cast<unsigned long>(F.q()));
  // Rabin: x^{q^n} = x mod g and gcd(x^{q^{n/r}} - x, g) = 1 for primes r | n.
  std::vector<FqPoly> frob(static_cast<std::size_t>(n) + 1);
  frob[0] = x();
  for (long i = 1; i <= n; ++i) frob[static_cast<std::size_t>(i)] = powmod(F, frob[static_cast<std::size_t>(i - 1)], q, g);
  if (sub(F, frob[static_cast<std::size_t>(n)], rem(F, x(), g)).degree() >= 0) return false;
  for (std::uint64_t r : prime_factors_u64(static_cast<std::uint64_t>(n))) {
    const FqPoly h = sub(F, frob[static_cast<std::size_t>(n / static_cast<long>(r))], x());
    if (gcd(F, g, h).degree() != 0) return false;
  }
  return true;
}

std::string to_string(const FieldCtx& F, const FqPoly& f, const char* var) {
  if (f.is_zero()) return "0";
  std::string s;
  for (long i = f.degree(); i >= 0; --i) {
    const FqElem c = f.c[static_cast<std::size_t>(i)];
    if (c.code == 0) continue;
    if (!s.empty()) s += " + ";
    const std::string cs = F.to_string(c);
    const bool compound = !F.is_prime_field() && cs.find('+') != std::string::npos;
    if (i == 0 || c != F.one()) s += compound ? "(" + cs + ")" : cs;
    if (i >= 1) {
      if (c != F.one()) s += "*";
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

}  // namespace fqpoly

// ---------------------------------------------------------------------------
// Factorization

namespace {

using namespace fqpoly;

// p-th root of a polynomial whose derivative vanishes.
FqPoly pth_root(const FieldCtx& F, const FqPoly& f) {
  const std::uint64_t p = F.p();
  const std::uint64_t root_exp = F.q() / p;  // a^{q/p} is the p-th root of a
  FqPoly r;
  for (std::size_t i = 0; i < f.c.size(); i += p) r.c.push_back(F.pow(f.c[i], root_exp));
  trim(r);
  return r;
}

// Squarefree decomposition of a monic polynomial: (part, multiplicity).
void squarefree_parts(const FieldCtx& F, const FqPoly& f, unsigned scale,
                      std::vector<std::pair<FqPoly, unsigned>>& out) {
  if (f.degree() <= 0) return;
  const FqPoly d = derivative(F, f);
  if (d.is_zero()) {
    squarefree_parts(F, pth_root(F, f), scale * static_cast<unsigned>(F.p()), out);
    return;
  }
  FqPoly c = gcd(F, f, d);
  FqPoly w = divmod(F, f, c).first;
  unsigned i = 1;
  while (w.degree() > 0) {
    FqPoly y = gcd(F, w, c);
    FqPoly part = divmod(F, w, y).first;
    if (part.degree() > 0) out.emplace_back(monic(F, part), i * scale);
    ++i;
    w = std::move(y);
    c = divmod(F, c, w).first;
  }
  if (c.degree() > 0) {
    squarefree_parts(F, pth_root(F, monic(F, c)), scale * static_cast<unsigned>(F.p()), out);
  }
}

// Matrix of the q-power Frobenius on F_q[x]/(f): column j is x^{qj} mod f.
class Frobenius {
 public:
  Frobenius(const FieldCtx& F, const FqPoly& f) : F_(F), d_(static_cast<std::size_t>(f.degree())) {
    const FqPoly xq = powmod(F, x(), BigInt(static_cast<unsigned long>(F.q())), f);
    cols_.resize(d_);
    FqPoly cur = constant(F.one());
    for (std::size_t j = 0; j < d_; ++j) {
      cols_[j] = cur;
      cols_[j].c.resize(d_, F.zero());
      if (j + 1 < d_) cur = rem(F, mul(F, cur, xq), f);
    }
  }

  FqPoly apply(const FqPoly& h) const {
    FqPoly out;
    if (F_.is_prime_field() && F_.p() < (1ULL << 20)) {
      std::vector<std::uint64_t> acc(d_, 0);
      for (std::size_t j = 0; j < h.c.size(); ++j) {
        const std::uint64_t hj = h.c[j].code;
        if (hj == 0) continue;
        const auto& col = cols_[j].c;
        for (std::size_t i = 0; i < d_; ++i) acc[i] += hj * col[i].code;
      }
      out.c.resize(d_);
      for (std::size_t i = 0; i < d_; ++i) out.c[i] = FqElem{acc[i] % F_.p()};
    } else {
      out.c.assign(d_, F_.zero());
      for (std::size_t j = 0; j < h.c.size(); ++j) {
        if (h.c[j].code == 0) continue;
        const auto& col = cols_[j].c;
        for (std::size_t i = 0; i < d_; ++i) out.c[i] = F_.add(out.c[i], F_.mul(h.c[j], col[i]));
      }
    }
    trim(out);
    return out;
  }

 private:
  const FieldCtx& F_;
  std::size_t d_;
  std::vector<FqPoly> cols_;
};

// Distinct-degree split of a monic squarefree polynomial: (product, degree).
std::vector<std::pair<FqPoly, unsigned>> distinct_degree(const FieldCtx& F, const FqPoly& f) {
  std::vector<std::pair<FqPoly, unsigned>> out;
  if (f.degree() <= 0) return out;
  if (f.degree() == 1) {
    out.emplace_back(f, 1);
    return out;
  }
  const Frobenius frob(F, f);
  FqPoly h = x();
  FqPoly rest = f;
  unsigned i = 0;
  while (rest.degree() >= 2 * static_cast<long>(i + 1)) {
    ++i;
    h = frob.apply(h);
    FqPoly g = gcd(F, rest, sub(F, h, x()));
    if (g.degree() > 0) {
      rest = divmod(F, rest, g).first;
      out.emplace_back(std::move(g), i);
    }
  }
  if (rest.degree() > 0) {
    const unsigned deg = static_cast<unsigned>(rest.degree());
    out.emplace_back(monic(F, rest), deg);
  }
  return out;
}

FqPoly random_poly(const FieldCtx& F, std::size_t below_degree, std::mt19937_64& rng) {
  FqPoly a;
  a.c.resize(below_degree);
  for (auto& c : a.c) c = FqElem{rng() % F.q()};
  trim(a);
  return a;
}

// Cantor-Zassenhaus equal-degree splitting.
void equal_degree(const FieldCtx& F, const FqPoly& g, unsigned d, std::mt19937_64& rng,
                  std::vector<FqPoly>& out) {
  if (g.degree() == static_cast<long>(d)) {
    out.push_back(g);
    return;
  }
  const std::size_t n = static_cast<std::size_t>(g.degree());
  const BigInt qd = pow_big(BigInt(static_cast<unsigned long>(F.q())), d);
  while (true) {
    FqPoly a = random_poly(F, n, rng);
    if (a.degree() <= 0) continue;
    FqPoly b;
    if (F.p() == 2) {
      // Absolute trace a + a^2 + ... + a^{2^{kd-1}}.
      const std::uint64_t steps = static_cast<std::uint64_t>(F.k()) * d;
      FqPoly term = rem(F, a, g);
      b = term;
      for (std::uint64_t i = 1; i < steps; ++i) {
        term = rem(F, mul(F, term, term), g);
        b = add(F, b, term);
      }
    } else {
      b = sub(F, powmod(F, a, (qd - 1) / 2, g), constant(F.one()));
    }
    FqPoly h = gcd(F, g, b);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree(F, h, d, rng, out);
      equal_degree(F, monic(F, divmod(F, g, h).first), d, rng, out);
      return;
    }
  }
}

bool canonical_less(const FqFactor& a, const FqFactor& b) {
  if (a.factor.degree() != b.factor.degree()) return a.factor.degree() < b.factor.degree();
  if (a.factor.c != b.factor.c) {
    return std::lexicographical_compare(a.factor.c.rbegin(), a.factor.c.rend(),
                                        b.factor.c.rbegin(), b.factor.c.rend());
  }
  return a.multiplicity < b.multiplicity;
}

}  // namespace

FqFactorization factor_fq(const FieldCtx& F, const FqPoly& f, std::uint64_t seed) {
  if (f.is_zero()) throw DomainError("factor_fq: cannot factor the zero polynomial");
  FqFactorization out;
  out.unit = f.c.back();
  const FqPoly g = monic(F, f);
  std::mt19937_64 rng(seed);
  std::vector<std::pair<FqPoly, unsigned>> parts;
  squarefree_parts(F, g, 1, parts);
  for (const auto& [part, mult] : parts) {
    for (const auto& [prod, deg] : distinct_degree(F, part)) {
      std::vector<FqPoly> irreducibles;
      equal_degree(F, prod, deg, rng, irreducibles);
      for (auto& h : irreducibles) out.factors.push_back({monic(F, h), mult});
    }
  }
  std::sort(out.factors.begin(), out.factors.end(), canonical_less);
  return out;
}

std::vector<DegreeCount> degree_profile(const FieldCtx& F, const FqPoly& f) {
  if (f.is_zero()) throw DomainError("degree_profile: zero polynomial");
  std::map<std::pair<unsigned, unsigned>, std::uint64_t> acc;
  std::vector<std::pair<FqPoly, unsigned>> parts;
  squarefree_parts(F, monic(F, f), 1, parts);
  for (const auto& [part, mult] : parts) {
    for (const auto& [prod, deg] : distinct_degree(F, part)) {
      acc[{deg, mult}] += static_cast<std::uint64_t>(prod.degree()) / deg;
    }
  }
  std::vector<DegreeCount> out;
  for (const auto& [key, count] : acc) out.push_back({key.first, key.second, count});
  return out;
}

// ---------------------------------------------------------------------------
// Roots of unity

std::pair<FqElem, FqElem> find_zeta(const FieldCtx& F, std::uint64_t ell) {
  if (ell < 3 || ell % 2 == 0 || !is_prime(ell)) {
    throw ParameterError("find_zeta: l must be an odd prime");
  }
  if ((F.q() - 1) % ell != 0) {
    throw PreconditionError("find_zeta: q = " + std::to_string(F.q()) + " is not 1 mod " +
                            std::to_string(ell));
  }
  const std::uint64_t cofactor = (F.q() - 1) / ell;
  FqElem h = F.one();
  for (std::uint64_t c = 2; c < F.q() && h == F.one(); ++c) h = F.pow(FqElem{c}, cofactor);
  FqElem best = h, cur = h;
  for (std::uint64_t j = 2; j < ell; ++j) {
    cur = F.mul(cur, h);
    best = std::min(best, cur);
  }
  return {best, F.inv(best)};
}

std::pair<FqElem, FqElem> zeta_from_zeta_plus(const FieldCtx& F, FqElem zplus, std::uint64_t ell) {
  FqPoly quad{{F.one(), F.neg(zplus), F.one()}};
  const FqFactorization fac = factor_fq(F, quad);
  std::vector<FqElem> roots;
  for (const auto& fa : fac.factors) {
    if (fa.factor.degree() != 1) {
      throw DomainError("zeta not rational over this residue field: x^2 - " + F.to_string(zplus) +
                        "x + 1 is irreducible over F_" + std::to_string(F.q()));
    }
    for (unsigned m = 0; m < fa.multiplicity; ++m) roots.push_back(F.neg(fa.factor.c[0]));
  }
  std::sort(roots.begin(), roots.end());
  if (F.element_order(roots[0]) != ell) {
    throw DomainError("zplus = " + F.to_string(zplus) + " is not an " + std::to_string(ell) +
                      "-th trace: roots have order " + std::to_string(F.element_order(roots[0])));
  }
  return {roots[0], roots[1]};
}

// ---------------------------------------------------------------------------
// Quadratic extension

QuadraticExtension::QuadraticExtension(FieldCtx base, FqElem trace)
    : base_(std::move(base)), trace_(trace) {
  const FqPoly quad{{base_.one(), base_.neg(trace_), base_.one()}};
  if (!fqpoly::is_irreducible(base_, quad)) {
    throw DomainError("y^2 - s*y + 1 splits over F_" + std::to_string(base_.q()));
  }
  const std::uint64_t q = base_.q();
  if (q >= (1ULL << 31)) throw ParameterError("quadratic extension: base field too large");
  auto lo = prime_factors_u64(q - 1), hi = prime_factors_u64(q + 1);
  group_primes_ = lo;
  group_primes_.insert(group_primes_.end(), hi.begin(), hi.end());
  std::sort(group_primes_.begin(), group_primes_.end());
  group_primes_.erase(std::unique(group_primes_.begin(), group_primes_.end()), group_primes_.end());
}

QuadraticExtension::Elem QuadraticExtension::add(Elem u, Elem v) const {
  return {base_.add(u.a, v.a), base_.add(u.b, v.b)};
}

QuadraticExtension::Elem QuadraticExtension::sub(Elem u, Elem v) const {
  return {base_.sub(u.a, v.a), base_.sub(u.b, v.b)};
}

QuadraticExtension::Elem QuadraticExtension::mul(Elem u, Elem v) const {
  // y^2 = s*y - 1
  const FieldCtx& F = base_;
  const FqElem bd = F.mul(u.b, v.b);
  return {F.sub(F.mul(u.a, v.a), bd),
          F.add(F.add(F.mul(u.a, v.b), F.mul(u.b, v.a)), F.mul(bd, trace_))};
}

QuadraticExtension::Elem QuadraticExtension::inv(Elem u) const {
  const FieldCtx& F = base_;
  // Conjugate y -> s - y; norm a^2 + a b s + b^2.
  const FqElem norm = F.add(F.add(F.mul(u.a, u.a), F.mul(F.mul(u.a, u.b), trace_)), F.mul(u.b, u.b));
  const FqElem ninv = F.inv(norm);
  const Elem conj{F.add(u.a, F.mul(u.b, trace_)), F.neg(u.b)};
  return {F.mul(conj.a, ninv), F.mul(conj.b, ninv)};
}

QuadraticExtension::Elem QuadraticExtension::pow(Elem u, std::uint64_t e) const {
  Elem acc = one();
  while (e) {
    if (e & 1) acc = mul(acc, u);
    u = mul(u, u);
    e >>= 1;
  }
  return acc;
}

std::uint64_t QuadraticExtension::element_order(Elem u) const {
  if (is_zero(u)) throw DomainError("element_order: zero has no multiplicative order");
  const std::uint64_t q = base_.q();
  return order_from_group(
      q * q - 1, group_primes_, [&](Elem v) { return v == one(); },
      [&](std::uint64_t e) { return pow(u, e); });
}

}  // namespace rikuna
