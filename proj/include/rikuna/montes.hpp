#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rikuna/finite_field.hpp"
#include "rikuna/zpoly.hpp"

namespace rikuna {

/// f = sum_i a_i(x) phi(x)^i with deg a_i < deg phi.
struct Development {
  ZPoly f;
  ZPoly phi;
  std::uint64_t p = 0;
  std::vector<ZPoly> coeffs;  // a_0 .. a_d

  ZPoly reassemble() const;
};

/// Repeated division with remainder by the monic phi. Throws ParameterError
/// for a non-monic or constant phi.
Development phi_development(const ZPoly& f, const ZPoly& phi, std::uint64_t p);

struct LatticePoint {
  std::int64_t x = 0;
  std::int64_t y = 0;
  bool operator==(const LatticePoint&) const = default;
};

/// Reduced fraction with positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
  static Rational make(std::int64_t num, std::int64_t den);
  bool operator==(const Rational&) const = default;
  bool operator<(const Rational& o) const { return num * o.den < o.num * den; }
};

struct Side {
  LatticePoint left;
  LatticePoint right;
  Rational slope;
  std::uint64_t degree = 0;  // gcd of the side's extents
  FqPoly residual;           // over F_p[x]/(phi)
  bool separable = false;
};

/// Principal part of the phi-Newton polygon.
struct NewtonPolygon {
  std::vector<LatticePoint> points;    // (i, nu_p(a_i)) for a_i != 0
  std::vector<LatticePoint> vertices;  // of the negative-slope part
  std::vector<Side> sides;

  /// Abscissa where the principal part ends (0 when empty).
  std::int64_t length() const { return vertices.empty() ? 0 : vertices.back().x; }
  /// Exact ordinate of the principal part over x in [0, length()].
  Rational height_at(std::int64_t x) const;
};

/// Residue field F_p[x]/(phi mod p).
FieldCtx residue_field(const Development& dev);

/// Lower convex hull of the development's points, negative-slope sides
/// only, with residual polynomials and separability filled in.
/// Throws DomainError when a_0 = 0 or when no coefficient is a p-adic unit.
NewtonPolygon newton_polygon(const Development& dev);

/// Residual polynomial of one side: coefficients red(a_k) at the lattice
/// points of the side, zero where the point lies above it.
FqPoly residual_poly(const Side& side, const Development& dev, const FieldCtx& residue);

struct LatticeCount {
  std::uint64_t count = 0;  // enumerated
  std::uint64_t pick = 0;   // interior + boundary via Pick's formula
};

/// Lattice points with x > 0, y > 0 on or under the principal polygon.
/// Throws Error if enumeration and Pick's formula disagree.
LatticeCount lattice_count(const NewtonPolygon& polygon);

struct FactorIndex {
  ZPoly phi;
  unsigned multiplicity = 0;
  Development development;
  NewtonPolygon polygon;
  std::uint64_t lattice = 0;
  std::uint64_t index = 0;  // lattice * deg phi
  bool regular = false;
};

struct IndexReport {
  std::uint64_t p = 0;
  std::vector<FactorIndex> factors;
  std::uint64_t total = 0;
  /// True iff every residual polynomial is separable; then total is
  /// nu_p(ind f), otherwise a lower bound.
  bool exact = false;
};

/// nu_p of the index of Z[theta] in the maximal order, for monic squarefree
/// f, by first-order Newton polygons. Throws ParameterError for non-monic f
/// or composite p and DomainError when f is not squarefree over Q.
IndexReport index_p(const ZPoly& f, std::uint64_t p,
                    std::uint64_t seed = kDefaultFactorSeed);

}  // namespace rikuna
