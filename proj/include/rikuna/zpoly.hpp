#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rikuna/exact_arith.hpp"

namespace rikuna {

/// Dense univariate polynomial over Z. Coefficients are stored from the
/// constant term upward and trailing zeros are always trimmed, so the zero
/// polynomial has no coefficients.
class ZPoly {
 public:
  ZPoly() = default;
  explicit ZPoly(std::vector<BigInt> coeffs);
  static ZPoly constant(const BigInt& c);
  static ZPoly monomial(const BigInt& c, std::size_t degree);
  /// x - c
  static ZPoly linear_root(const BigInt& c);

  bool is_zero() const { return c_.empty(); }
  /// Degree, or -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  const BigInt& leading() const;
  /// Coefficient of x^i (zero beyond the degree).
  BigInt coeff(std::size_t i) const;
  const std::vector<BigInt>& coeffs() const { return c_; }

  BigInt eval(const BigInt& x) const;
  ZPoly derivative() const;
  /// f(x + c)
  ZPoly taylor_shift(const BigInt& c) const;

  ZPoly& operator+=(const ZPoly& o);
  ZPoly& operator-=(const ZPoly& o);
  ZPoly& operator*=(const BigInt& s);
  friend ZPoly operator+(ZPoly a, const ZPoly& b) { return a += b; }
  friend ZPoly operator-(ZPoly a, const ZPoly& b) { return a -= b; }
  friend ZPoly operator*(ZPoly a, const BigInt& s) { return a *= s; }
  friend ZPoly operator*(const ZPoly& a, const ZPoly& b);
  bool operator==(const ZPoly&) const = default;

  std::string to_string(const char* var = "x") const;

 private:
  void trim();
  std::vector<BigInt> c_;
};

struct ZDivMod {
  ZPoly quotient;
  ZPoly remainder;
};

/// Division with remainder by a monic divisor; exact over Z.
ZDivMod divmod_monic(const ZPoly& f, const ZPoly& g);

/// nu_p of a polynomial: minimum over its coefficients, infinite for zero.
Valuation val_p(const ZPoly& f, std::uint64_t p);

/// Determinant by fraction-free Bareiss elimination.
BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m);

/// Res(f, g) as the determinant of the Sylvester matrix.
BigInt resultant(const ZPoly& f, const ZPoly& g);

/// (-1)^(d(d-1)/2) Res(f, f') / lc(f), with d = deg f >= 1.
BigInt discriminant(const ZPoly& f);

/// Coefficients reduced into [0, p).
std::vector<std::uint64_t> reduce_mod(const ZPoly& f, std::uint64_t p);

}  // namespace rikuna
