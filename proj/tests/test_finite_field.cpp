#include <random>

#include "doctest.h"
#include "rikuna/errors.hpp"
#include "rikuna/finite_field.hpp"

using namespace rikuna;

namespace {

std::vector<std::pair<std::uint64_t, unsigned>> prime_powers(std::uint64_t limit) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (!is_prime(p)) continue;
    std::uint64_t q = p;
    for (unsigned k = 1; q <= limit; ++k, q *= p) out.push_back({p, k});
  }
  return out;
}

FqPoly random_poly(std::mt19937_64& rng, const FieldCtx& F, long degree) {
  FqPoly f;
  for (long i = 0; i < degree; ++i) f.c.push_back(FqElem{rng() % F.q()});
  f.c.push_back(FqElem{1 + rng() % (F.q() - 1)});
  return f;
}

FqPoly expand(const FieldCtx& F, const FqFactorization& fac) {
  FqPoly acc = fqpoly::constant(fac.unit);
  for (const FqFactor& f : fac.factors)
    acc = fqpoly::mul(F, acc, fqpoly::pow(F, f.factor, f.multiplicity));
  return acc;
}

// Irreducible of degree <= 3 iff it has no root.
bool has_root(const FieldCtx& F, const FqPoly& f) {
  for (std::uint64_t a = 0; a < F.q(); ++a)
    if (fqpoly::eval(F, f, FqElem{a}).code == 0) return true;
  return false;
}

}  // namespace

TEST_SUITE("finite_field") {

TEST_CASE("prime field arithmetic is a field") {
  FieldCtx F = FieldCtx::make(7, 1);
  for (std::uint64_t a = 0; a < 7; ++a) {
    for (std::uint64_t b = 0; b < 7; ++b) {
      CHECK(F.add(FqElem{a}, FqElem{b}).code == (a + b) % 7);
      CHECK(F.mul(FqElem{a}, FqElem{b}).code == (a * b) % 7);
      CHECK(F.sub(F.add(FqElem{a}, FqElem{b}), FqElem{b}).code == a);
    }
    if (a) CHECK(F.mul(FqElem{a}, F.inv(FqElem{a})) == F.one());
  }
  CHECK_THROWS_AS(F.inv(F.zero()), DomainError);
  CHECK(F.from_int(-1).code == 6);
  CHECK(F.from_bigint(BigInt(-15)).code == 6);
}

TEST_CASE("field construction rejects bad parameters") {
  CHECK_THROWS_AS(FieldCtx::make(6, 1), ParameterError);
  CHECK_THROWS_AS(FieldCtx::make(5, 0), ParameterError);
}

TEST_CASE("extension modulus is the least monic irreducible by code") {
  for (auto [p, k] : prime_powers(1000)) {
    if (k < 2 || k > 3) continue;
    FieldCtx F = FieldCtx::make(p, k);
    FieldCtx Fp = FieldCtx::make(p, 1);
    std::uint64_t q = F.q();
    for (std::uint64_t code = 0; code < q; ++code) {
      FqPoly cand;
      for (std::uint64_t c = code, i = 0; i < k; ++i, c /= p) cand.c.push_back(FqElem{c % p});
      cand.c.push_back(Fp.one());
      if (!has_root(Fp, cand)) {
        std::vector<std::uint64_t> want;
        for (FqElem e : cand.c) want.push_back(e.code);
        CHECK(F.modulus() == want);
        break;
      }
    }
  }
}

TEST_CASE("table and polynomial multiplication agree with reduction mod the modulus") {
  std::mt19937_64 rng(11);
  for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{
           {2, 8}, {3, 5}, {5, 3}, {2, 21}, {3, 13}, {1009, 2}}) {
    FieldCtx F = FieldCtx::make(p, k);
    FieldCtx Fp = FieldCtx::make(p, 1);
    FqPoly mod = fqpoly::from_codes(F.modulus());
    for (int i = 0; i < 200; ++i) {
      FqElem a{rng() % F.q()}, b{rng() % F.q()};
      FqPoly pa = fqpoly::from_codes(F.coeffs(a)), pb = fqpoly::from_codes(F.coeffs(b));
      FqPoly prod = fqpoly::rem(Fp, fqpoly::mul(Fp, pa, pb), mod);
      std::vector<std::uint64_t> digits;
      for (FqElem e : prod.c) digits.push_back(e.code);
      CHECK(F.mul(a, b) == F.from_coeffs(digits));
      if (a.code) CHECK(F.mul(a, F.inv(a)) == F.one());
    }
  }
}

TEST_CASE("element orders divide q - 1") {
  for (auto [p, k] : prime_powers(512)) {
    FieldCtx F = FieldCtx::make(p, k);
    for (std::uint64_t a = 1; a < F.q(); ++a) {
      std::uint64_t ord = F.element_order(FqElem{a});
      CHECK((F.q() - 1) % ord == 0);
      CHECK(F.pow(FqElem{a}, ord) == F.one());
    }
  }
}

TEST_CASE("element names") {
  FieldCtx F = FieldCtx::make(3, 2);
  CHECK(F.to_string(FqElem{0}) == "0");
  CHECK(F.to_string(FqElem{4}) == "a+1");
  CHECK(F.to_string(FqElem{5}) == "a+2");
  CHECK(F.to_string(FqElem{6}) == "2*a");
}

TEST_CASE("factorization re-expands and has irreducible monic factors") {
  std::mt19937_64 rng(3);
  for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{
           {2, 1}, {3, 1}, {7, 1}, {31, 1}, {2, 2}, {3, 2}, {2, 4}, {1000003, 1}}) {
    FieldCtx F = FieldCtx::make(p, k);
    for (int i = 0; i < 40; ++i) {
      FqPoly f = random_poly(rng, F, 1 + static_cast<long>(rng() % 24));
      if (i % 4 == 0) f = fqpoly::mul(F, f, fqpoly::mul(F, f, random_poly(rng, F, 2)));
      FqFactorization fac = factor_fq(F, f);
      CHECK(expand(F, fac) == f);
      for (const FqFactor& g : fac.factors) {
        CHECK(g.factor.c.back() == F.one());
        CHECK(fqpoly::is_irreducible(F, g.factor));
      }
      FqFactorization other = factor_fq(F, f, 12345);
      CHECK(other.factors.size() == fac.factors.size());
      for (std::size_t j = 0; j < fac.factors.size(); ++j) {
        CHECK(other.factors[j].factor == fac.factors[j].factor);
        CHECK(other.factors[j].multiplicity == fac.factors[j].multiplicity);
      }
    }
  }
}

TEST_CASE("degree profile agrees with full factorization") {
  std::mt19937_64 rng(5);
  for (std::uint64_t p : {2u, 5u, 13u}) {
    FieldCtx F = FieldCtx::make(p, 1);
    for (int i = 0; i < 40; ++i) {
      FqPoly f = random_poly(rng, F, 1 + static_cast<long>(rng() % 30));
      if (i % 3 == 0) f = fqpoly::mul(F, f, f);
      std::map<std::pair<unsigned, unsigned>, std::uint64_t> want;
      for (const FqFactor& g : factor_fq(F, f).factors)
        ++want[{static_cast<unsigned>(g.factor.degree()), g.multiplicity}];
      std::map<std::pair<unsigned, unsigned>, std::uint64_t> got;
      for (const DegreeCount& d : degree_profile(F, f)) got[{d.degree, d.multiplicity}] += d.count;
      CHECK(got == want);
    }
  }
}

TEST_CASE("x^4 + 1 over F_3 splits into two quadratics") {
  FieldCtx F = FieldCtx::make(3, 1);
  FqFactorization fac = factor_fq(F, fqpoly::from_codes({1, 0, 0, 0, 1}));
  REQUIRE(fac.factors.size() == 2);
  CHECK(fac.factors[0].factor.degree() == 2);
  CHECK(fac.factors[1].factor.degree() == 2);
}

TEST_CASE("squarefree and irreducibility tests") {
  FieldCtx F = FieldCtx::make(5, 1);
  CHECK(fqpoly::is_irreducible(F, fqpoly::from_codes({2, 0, 1})));      // x^2 + 2
  CHECK_FALSE(fqpoly::is_irreducible(F, fqpoly::from_codes({1, 0, 1})));  // x^2 + 1
  CHECK(fqpoly::is_squarefree(F, fqpoly::from_codes({1, 0, 1})));
  CHECK_FALSE(fqpoly::is_squarefree(F, fqpoly::from_codes({1, 2, 1})));  // (x + 1)^2
  // x^5 - x + 1 is irreducible over F_5 (Artin-Schreier).
  CHECK(fqpoly::is_irreducible(F, fqpoly::from_codes({1, 4, 0, 0, 0, 1})));
}

TEST_CASE("roots of unity") {
  FieldCtx F7 = FieldCtx::make(7, 1);
  auto [z, zi] = find_zeta(F7, 3);
  CHECK(z.code == 2);
  CHECK(zi.code == 4);
  CHECK_THROWS_AS(find_zeta(F7, 5), PreconditionError);
  CHECK_THROWS_AS(find_zeta(F7, 4), ParameterError);

  FieldCtx F31 = FieldCtx::make(31, 1);
  auto r18 = zeta_from_zeta_plus(F31, FqElem{18}, 5);
  CHECK(r18.first.code == 2);
  CHECK(r18.second.code == 16);
  auto r12 = zeta_from_zeta_plus(F31, FqElem{12}, 5);
  CHECK(r12.first.code == 4);
  CHECK(r12.second.code == 8);
  // 3 + 3^-1 = 24 has roots of order 30, not 5.
  CHECK_THROWS_AS(zeta_from_zeta_plus(F31, FqElem{24}, 5), DomainError);
  // x^2 + x + 1 is irreducible over F_5.
  FieldCtx F5 = FieldCtx::make(5, 1);
  CHECK_THROWS_AS(zeta_from_zeta_plus(F5, F5.from_int(-1), 3), DomainError);
}

TEST_CASE("quadratic extension") {
  FieldCtx F5 = FieldCtx::make(5, 1);
  QuadraticExtension E(F5, F5.from_int(-1));
  CHECK(E.element_order(E.y()) == 3);
  for (std::uint64_t a = 0; a < 5; ++a) {
    for (std::uint64_t b = 0; b < 5; ++b) {
      QuadraticExtension::Elem u{FqElem{a}, FqElem{b}};
      if (E.is_zero(u)) continue;
      CHECK(E.mul(u, E.inv(u)) == E.one());
      CHECK(24 % E.element_order(u) == 0);
    }
  }
  CHECK_THROWS_AS(QuadraticExtension(FieldCtx::make(7, 1), FqElem{6}), DomainError);
}

}
