#include "rikuna/zpoly.hpp"

#include <utility>

#include "rikuna/errors.hpp"

namespace rikuna {

ZPoly::ZPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

ZPoly ZPoly::constant(const BigInt& c) { return ZPoly({c}); }

ZPoly ZPoly::monomial(const BigInt& c, std::size_t degree) {
  std::vector<BigInt> v(degree + 1, BigInt(0));
  v[degree] = c;
  return ZPoly(std::move(v));
}

ZPoly ZPoly::linear_root(const BigInt& c) { return ZPoly({-c, BigInt(1)}); }

void ZPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const BigInt& ZPoly::leading() const {
  if (c_.empty()) throw DomainError("leading coefficient of the zero polynomial");
  return c_.back();
}

BigInt ZPoly::coeff(std::size_t i) const { return i < c_.size() ? c_[i] : BigInt(0); }

BigInt ZPoly::eval(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

ZPoly ZPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<BigInt> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return ZPoly(std::move(d));
}

ZPoly ZPoly::taylor_shift(const BigInt& c) const {
  // Horner-style repeated synthetic division, O(d^2) exact operations.
  std::vector<BigInt> a = c_;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = n - 1; j > i; --j) a[j - 1] += c * a[j];
  }
  return ZPoly(std::move(a));
}

ZPoly& ZPoly::operator+=(const ZPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), BigInt(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

ZPoly& ZPoly::operator-=(const ZPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), BigInt(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

ZPoly& ZPoly::operator*=(const BigInt& s) {
  for (auto& c : c_) c *= s;
  trim();
  return *this;
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> r(a.c_.size() + b.c_.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      mpz_addmul(r[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
  }
  return ZPoly(std::move(r));
}

std::string ZPoly::to_string(const char* var) const {
  if (c_.empty()) return "0";
  std::string s;
  for (long i = degree(); i >= 0; --i) {
    const BigInt& c = c_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    BigInt mag = abs(c);
    if (s.empty()) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    if (mag != 1 || i == 0) s += mag.get_str();
    if (i >= 1) {
      if (mag != 1) s += "*";
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

ZDivMod divmod_monic(const ZPoly& f, const ZPoly& g) {
  if (!g.is_monic()) throw ParameterError("divmod_monic: divisor must be monic");
  if (f.degree() < g.degree()) return {ZPoly(), f};
  std::vector<BigInt> r = f.coeffs();
  const std::size_t dg = static_cast<std::size_t>(g.degree());
  std::vector<BigInt> q(r.size() - dg, BigInt(0));
  const auto& gc = g.coeffs();
  for (std::size_t i = r.size(); i-- > dg;) {
    const BigInt lead = r[i];
    if (lead == 0) continue;
    q[i - dg] = lead;
    for (std::size_t j = 0; j <= dg; ++j) {
      mpz_submul(r[i - dg + j].get_mpz_t(), lead.get_mpz_t(), gc[j].get_mpz_t());
    }
  }
  r.resize(dg);
  return {ZPoly(std::move(q)), ZPoly(std::move(r))};
}

Valuation val_p(const ZPoly& f, std::uint64_t p) {
  Valuation best = Valuation::infinite();
  for (const auto& c : f.coeffs()) {
    Valuation v = val_p(c, p);
    if (v < best) best = v;
  }
  if (f.is_zero() && !is_prime(p)) throw ParameterError("val_p: modulus is not prime");
  return best;
}

std::vector<std::uint64_t> reduce_mod(const ZPoly& f, std::uint64_t p) {
  std::vector<std::uint64_t> out;
  out.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) {
    out.push_back(mpz_fdiv_ui(c.get_mpz_t(), p));
  }
  return out;
}

BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt& x = m[i][j];
        x *= m[k][k];
        mpz_submul(x.get_mpz_t(), m[i][k].get_mpz_t(), m[k][j].get_mpz_t());
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

BigInt resultant(const ZPoly& f, const ZPoly& g) {
  if (f.is_zero() || g.is_zero()) return 0;
  const std::size_t m = static_cast<std::size_t>(f.degree());
  const std::size_t n = static_cast<std::size_t>(g.degree());
  if (m == 0 && n == 0) return 1;
  if (m == 0) return pow_big(f.leading(), static_cast<unsigned>(n));
  if (n == 0) return pow_big(g.leading(), static_cast<unsigned>(m));
  const std::size_t size = m + n;
  std::vector<std::vector<BigInt>> syl(size, std::vector<BigInt>(size, 0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i <= m; ++i) syl[r][r + i] = f.coeff(m - i);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t i = 0; i <= n; ++i) syl[n + r][r + i] = g.coeff(n - i);
  return bareiss_determinant(std::move(syl));
}

BigInt discriminant(const ZPoly& f) {
  if (f.degree() < 1) throw ParameterError("discriminant needs positive degree");
  const long d = f.degree();
  BigInt res = resultant(f, f.derivative());
  BigInt out;
  mpz_divexact(out.get_mpz_t(), res.get_mpz_t(), f.leading().get_mpz_t());
  if ((d * (d - 1) / 2) % 2 != 0) out = -out;
  return out;
}

}  // namespace rikuna
