#include "rikuna/montes.hpp"

#include <algorithm>
#include <numeric>

#include "rikuna/errors.hpp"

namespace rikuna {

ZPoly Development::reassemble() const {
  ZPoly acc;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * phi + *it;
  return acc;
}

Development phi_development(const ZPoly& f, const ZPoly& phi, std::uint64_t p) {
  if (phi.degree() < 1 || !phi.is_monic())
    throw ParameterError("phi must be monic of degree at least 1");
  if (!is_prime(p)) throw ParameterError("p must be prime");
  Development dev{f, phi, p, {}};
  ZPoly rest = f;
  while (!rest.is_zero()) {
    auto [q, r] = divmod_monic(rest, phi);
    dev.coeffs.push_back(std::move(r));
    rest = std::move(q);
  }
  if (dev.coeffs.empty()) dev.coeffs.emplace_back();
  return dev;
}

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("zero denominator");
  if (den < 0) num = -num, den = -den;
  std::int64_t g = std::gcd(num, den);
  if (g > 1) num /= g, den /= g;
  return {num, den};
}

Rational NewtonPolygon::height_at(std::int64_t x) const {
  for (const Side& s : sides) {
    if (x < s.left.x || x > s.right.x) continue;
    std::int64_t dx = s.right.x - s.left.x;
    return Rational::make(s.left.y * dx + (s.right.y - s.left.y) * (x - s.left.x), dx);
  }
  if (!vertices.empty() && x == vertices.back().x) return {vertices.back().y, 1};
  throw DomainError("abscissa outside the principal polygon");
}

FieldCtx residue_field(const Development& dev) {
  return FieldCtx::with_modulus(dev.p, reduce_mod(dev.phi, dev.p));
}

namespace {

// Cross product of (b - a) and (c - a).
std::int64_t cross(const LatticePoint& a, const LatticePoint& b, const LatticePoint& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

BigInt strip_p(const BigInt& v, std::uint64_t p, std::int64_t times) {
  BigInt out = v;
  BigInt pp = pow_big(BigInt(static_cast<unsigned long>(p)), static_cast<unsigned>(times));
  mpz_divexact(out.get_mpz_t(), out.get_mpz_t(), pp.get_mpz_t());
  return out;
}

}  // namespace

FqPoly residual_poly(const Side& side, const Development& dev, const FieldCtx& residue) {
  std::int64_t dx = side.right.x - side.left.x;
  std::int64_t step = dx / static_cast<std::int64_t>(side.degree);
  std::int64_t drop = (side.left.y - side.right.y) / static_cast<std::int64_t>(side.degree);
  FqPoly r;
  r.c.assign(side.degree + 1, residue.zero());
  for (std::uint64_t i = 0; i <= side.degree; ++i) {
    std::int64_t k = side.left.x + static_cast<std::int64_t>(i) * step;
    std::int64_t y = side.left.y - static_cast<std::int64_t>(i) * drop;
    const ZPoly& a = dev.coeffs.at(static_cast<std::size_t>(k));
    if (a.is_zero()) continue;
    Valuation v = val_p(a, dev.p);
    if (v.value() > static_cast<std::uint64_t>(y)) continue;
    std::vector<std::uint64_t> digits;
    for (const BigInt& c : a.coeffs()) {
      BigInt s = strip_p(c, dev.p, y);
      digits.push_back(to_u64(mod_floor(s, BigInt(static_cast<unsigned long>(dev.p)))));
    }
    if (residue.k() == 1) {
      // F_p[x]/(x - c): evaluate at the root.
      FqElem root = residue.zero();
      if (dev.phi.degree() == 1) {
        root = residue.from_bigint(-dev.phi.coeff(0));
      }
      FqElem acc = residue.zero();
      for (auto it = digits.rbegin(); it != digits.rend(); ++it)
        acc = residue.add(residue.mul(acc, root), FqElem{*it});
      r.c[i] = acc;
    } else {
      r.c[i] = residue.from_coeffs(digits);
    }
  }
  fqpoly::trim(r);
  return r;
}

NewtonPolygon newton_polygon(const Development& dev) {
  NewtonPolygon poly;
  bool has_unit = false;
  for (std::size_t i = 0; i < dev.coeffs.size(); ++i) {
    if (dev.coeffs[i].is_zero()) continue;
    Valuation v = val_p(dev.coeffs[i], dev.p);
    poly.points.push_back({static_cast<std::int64_t>(i), static_cast<std::int64_t>(v.value())});
    if (v.value() == 0) has_unit = true;
  }
  if (!has_unit) throw DomainError("f vanishes modulo p; Newton polygon is degenerate");

  std::vector<LatticePoint> hull;
  for (const LatticePoint& pt : poly.points) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), pt) <= 0) hull.pop_back();
    hull.push_back(pt);
  }
  poly.vertices.push_back(hull.front());
  for (std::size_t i = 1; i < hull.size() && hull[i].y < hull[i - 1].y; ++i) {
    poly.vertices.push_back(hull[i]);
  }
  if (poly.vertices.size() == 1) poly.vertices.clear();

  FieldCtx residue = residue_field(dev);
  for (std::size_t i = 1; i < poly.vertices.size(); ++i) {
    Side s;
    s.left = poly.vertices[i - 1];
    s.right = poly.vertices[i];
    std::int64_t dx = s.right.x - s.left.x;
    std::int64_t dy = s.right.y - s.left.y;
    s.slope = Rational::make(dy, dx);
    s.degree = static_cast<std::uint64_t>(std::gcd(dx, dy));
    s.residual = residual_poly(s, dev, residue);
    s.separable = fqpoly::is_squarefree(residue, s.residual);
    poly.sides.push_back(std::move(s));
  }
  return poly;
}

LatticeCount lattice_count(const NewtonPolygon& polygon) {
  LatticeCount out;
  if (polygon.sides.empty()) return out;
  std::int64_t x0 = polygon.vertices.front().x;
  std::int64_t y0 = polygon.vertices.front().y;
  std::int64_t e = polygon.length();
  for (std::int64_t x = std::max<std::int64_t>(1, x0); x < e; ++x) {
    Rational h = polygon.height_at(x);
    for (std::int64_t y = 1; y * h.den <= h.num; ++y) ++out.count;
  }

  // Pick on the region cut out by the polygon, the x-axis and the line x = x0.
  std::int64_t twice_area = 0;
  std::int64_t chain = 0;
  for (const Side& s : polygon.sides) {
    twice_area += (s.right.x - s.left.x) * (s.left.y + s.right.y);
    chain += static_cast<std::int64_t>(s.degree);
  }
  std::int64_t boundary = chain + (e - x0) + y0;
  std::int64_t interior2 = twice_area + 2 - boundary;
  if (interior2 % 2 != 0) throw Error("Pick's formula gave a non-integral interior count");
  std::int64_t pick = interior2 / 2 + chain - 1 + (x0 > 0 ? y0 - 1 : 0);
  out.pick = static_cast<std::uint64_t>(pick);
  if (out.pick != out.count) throw Error("lattice enumeration disagrees with Pick's formula");
  return out;
}

namespace {

bool squarefree_over_q(const ZPoly& f) {
  // A squarefree reduction at a good prime certifies squarefreeness.
  static constexpr std::uint64_t kPrimes[] = {1000003, 1000033, 1000037, 1000039, 1000081};
  for (std::uint64_t q : kPrimes) {
    FieldCtx F = FieldCtx::make(q, 1);
    FqPoly g = fqpoly::from_codes(reduce_mod(f, q));
    if (fqpoly::is_squarefree(F, g)) return true;
  }
  return discriminant(f) != 0;
}

}  // namespace

IndexReport index_p(const ZPoly& f, std::uint64_t p, std::uint64_t seed) {
  if (!f.is_monic()) throw ParameterError("index_p requires a monic polynomial");
  if (!is_prime(p)) throw ParameterError("p must be prime");
  if (f.degree() < 1) throw ParameterError("index_p requires a non-constant polynomial");
  if (!squarefree_over_q(f)) throw DomainError("polynomial is not squarefree over Q");

  FieldCtx Fp = FieldCtx::make(p, 1);
  FqFactorization fac = factor_fq(Fp, fqpoly::from_codes(reduce_mod(f, p)), seed);
  IndexReport rep;
  rep.p = p;
  rep.exact = true;
  for (const FqFactor& fa : fac.factors) {
    std::vector<BigInt> lift;
    for (FqElem c : fa.factor.c) lift.emplace_back(static_cast<unsigned long>(c.code));
    ZPoly phi(lift);
    Development dev = phi_development(f, phi, p);
    // phi dividing f exactly puts a_0 at infinity; shift to another lift.
    for (unsigned long k = 1; dev.coeffs.front().is_zero(); ++k) {
      phi = ZPoly(lift) + ZPoly::constant(BigInt(static_cast<unsigned long>(p)) * k);
      dev = phi_development(f, phi, p);
    }
    FactorIndex fi;
    fi.phi = phi;
    fi.multiplicity = fa.multiplicity;
    fi.polygon = newton_polygon(dev);
    fi.development = std::move(dev);
    fi.lattice = lattice_count(fi.polygon).count;
    fi.index = fi.lattice * static_cast<std::uint64_t>(phi.degree());
    fi.regular = true;
    for (const Side& s : fi.polygon.sides) fi.regular = fi.regular && s.separable;
    rep.total += fi.index;
    rep.exact = rep.exact && fi.regular;
    rep.factors.push_back(std::move(fi));
  }
  return rep;
}

}  // namespace rikuna
