#include <set>

#include "doctest.h"
#include "rikuna/decomposition.hpp"
#include "rikuna/dynamics.hpp"
#include "rikuna/errors.hpp"

using namespace rikuna;

namespace {

FactorPattern pattern(std::vector<PatternEntry> entries) {
  FactorPattern p;
  p.entries = std::move(entries);
  return p;
}

bool is_fixed_root(const RikunaMap& map, FqElem t) { return t == map.zeta() || t == map.zeta_inv(); }

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

TEST_SUITE("decomposition") {

TEST_CASE("residue data of the two primes over 31") {
  RikunaMap m18 = PrimeSpec{31, 1, BigInt(18)}.make_map(5);
  RikunaMap m12 = PrimeSpec{31, 1, BigInt(12)}.make_map(5);
  CHECK(std::set<std::uint64_t>{m18.zeta().code, m18.zeta_inv().code} == std::set<std::uint64_t>{2, 16});
  CHECK(std::set<std::uint64_t>{m12.zeta().code, m12.zeta_inv().code} == std::set<std::uint64_t>{4, 8});
  CHECK_THROWS_AS(PrimeSpec({31, 1, BigInt(24)}).make_map(5), PreconditionError);
  CHECK_THROWS_AS(PrimeSpec({31, 1, BigInt(1)}).make_map(5), PreconditionError);
}

TEST_CASE("inertness certificates over 31") {
  const PrimeSpec p1{31, 1, BigInt(18)}, p2{31, 1, BigInt(12)};
  CHECK(irreducibility_certificate(10, p1, 5));
  CHECK(irreducibility_certificate(10, p2, 5));
  CHECK_FALSE(irreducibility_certificate(14, p1, 5));
  CHECK(irreducibility_certificate(14, p2, 5));
  CHECK(irreducibility_certificate(41, p2, 5));
  CHECK_FALSE(irreducibility_certificate(2, p1, 5));
  CHECK(irreducibility_certificate(1, PrimeSpec{7}, 3));
  CHECK_FALSE(irreducibility_certificate(2, PrimeSpec{7}, 3));
  CHECK_THROWS_AS(irreducibility_certificate(1, PrimeSpec{11}, 3), PreconditionError);
}

TEST_CASE("t = 10 stays inert over 31 at every level") {
  for (unsigned n = 1; n <= 3; ++n) {
    DecompositionReport r = decompose(n, 10, PrimeSpec{31, 1, BigInt(12)}, 5);
    CHECK(r.match);
    CHECK(r.observed.same_shape(pattern({{ipow(5, n), 1, 1}})));
    DecompositionReport s = decompose(n, 14, PrimeSpec{31, 1, BigInt(18)}, 5);
    CHECK(s.match);
    CHECK_FALSE(s.observed.same_shape(pattern({{ipow(5, n), 1, 1}})));
  }
}

TEST_CASE("cubic map over F_7") {
  DecompositionReport r = decompose(1, 1, PrimeSpec{7}, 3);
  CHECK(r.q_one_mod_ell);
  CHECK(r.squarefree_mod_p);
  CHECK(r.index_coprime);
  CHECK(r.applicable);
  REQUIRE(r.predicted);
  CHECK(r.predicted->pper == 1);
  CHECK(r.predicted->M == 1);
  CHECK(r.match);
  CHECK(to_string(r.observed) == "[1 x deg 3]");

  RikunaMap map = RikunaMap::canonical(FieldCtx::make(7, 1), 3);
  for (unsigned n = 1; n <= 3; ++n) {
    CHECK(observe_pattern(map, n, FqElem{1}).same_shape(pattern({{ipow(3, n), 1, 1}})));
  }
}

TEST_CASE("periodic parameter beyond the maximal preperiod") {
  RikunaMap map = RikunaMap::canonical(FieldCtx::make(7, 1), 3);
  REQUIRE(map.phi(PFElem::finite({3})) == PFElem::finite({3}));
  PatternPrediction pred = predict_pattern(map, 2, FqElem{3});
  CHECK(pred.M == 1);
  CHECK(pred.pper == 0);
  FactorPattern want = pattern({{1, 3, 1}, {3, 2, 1}});
  CHECK(pred.backward.same_shape(want));
  CHECK(observe_pattern(map, 2, FqElem{3}).same_shape(want));
  CHECK(pred.printed.total_degree() == 12);
  CHECK_FALSE(pred.printed_agrees);
  bool logged = false;
  for (const std::string& note : pred.notes)
    if (note.find("degree sum 12, expected 9") != std::string::npos) logged = true;
  CHECK(logged);
}

TEST_CASE("periodic parameter at level one over 31") {
  RikunaMap map = PrimeSpec{31, 1, BigInt(18)}.make_map(5);
  int seen = 0;
  for (std::uint64_t c = 0; c < 31; ++c) {
    FqElem t{c};
    if (is_fixed_root(map, t) || orbit_stats(map, PFElem::finite(t)).pper != 0) continue;
    ++seen;
    CHECK(observe_pattern(map, 1, t).same_shape(pattern({{1, 5, 1}})));
  }
  // The sixth periodic point off the fixed roots is infinity.
  CHECK(seen == 5);
  CHECK(orbit_stats(map, PFElem::infinity()).pper == 0);
}

TEST_CASE("fixed roots give a repeated linear factor") {
  RikunaMap map = RikunaMap::canonical(FieldCtx::make(7, 1), 3);
  for (unsigned n = 1; n <= 2; ++n) {
    FactorPattern obs = observe_pattern(map, n, map.zeta());
    CHECK_FALSE(obs.squarefree);
    CHECK(obs.same_shape(FactorPattern{{{1, 1, static_cast<unsigned>(ipow(3, n))}}, PatternSource::Observed, false}));
    PatternPrediction pred = predict_pattern(map, n, map.zeta_inv());
    CHECK(pred.root_of_unity);
    CHECK(pred.backward.same_shape(obs));
  }
  DecompositionReport r = decompose(1, 2, PrimeSpec{7}, 3);
  CHECK_FALSE(r.squarefree_mod_p);
  CHECK_FALSE(r.applicable);
}

TEST_CASE("prediction matches factorization on a small grid") {
  for (std::uint64_t ell : {3u, 5u})
    for (std::uint64_t q : {7u, 13u, 16u, 19u, 25u, 31u, 41u}) {
      if (q % ell != 1) continue;
      std::uint64_t p = q, k = 1;
      if (q == 16) p = 2, k = 4;
      if (q == 25) p = 5, k = 2;
      RikunaMap map = RikunaMap::canonical(FieldCtx::make(p, static_cast<unsigned>(k)), ell);
      for (unsigned n = 1; n <= 2; ++n) {
        PQPair pq = map.pq(n);
        for (std::uint64_t c = 0; c < q; ++c) {
          FqElem t{c};
          CAPTURE(q);
          CAPTURE(c);
          PatternPrediction pred = predict_pattern(map, n, t);
          FactorPattern obs = observe_pattern(map, pq, t);
          CHECK(pred.backward.same_shape(obs));
          CHECK(obs.total_degree() == ipow(ell, n));
          CHECK(pred.backward.total_degree() == ipow(ell, n));
          CHECK(obs.squarefree == !is_fixed_root(map, t));
          if (pred.pper >= 1) CHECK(pred.printed_agrees);
        }
      }
    }
}

TEST_CASE("certified parameters stay irreducible") {
  const PrimeSpec spec{13};
  RikunaMap map = spec.make_map(3);
  int certified = 0;
  for (int t = 0; t < 13; ++t) {
    if (!irreducibility_certificate(t, spec, 3)) continue;
    ++certified;
    for (unsigned n = 1; n <= 3; ++n) {
      FactorPattern obs = observe_pattern(map, n, FqElem{static_cast<std::uint64_t>(t)});
      REQUIRE(obs.entries.size() == 1);
      CHECK(obs.entries[0].count == 1);
      CHECK(obs.entries[0].degree == ipow(3, n));
    }
  }
  CHECK(certified > 0);
}

TEST_CASE("prediction needs zeta in the field") {
  RikunaMap map = RikunaMap::shanks(FieldCtx::make(5, 1));
  CHECK_THROWS_AS(predict_pattern(map, 1, FqElem{1}), PreconditionError);
}

TEST_CASE("index check for the cubic family") {
  DecompositionReport r = decompose(2, 4, PrimeSpec{7}, 3);
  CHECK_FALSE(r.index_check.empty());
  CHECK(r.index_coprime);
  DecompositionReport s = decompose(1, 5, PrimeSpec{31, 1, BigInt(18)}, 5);
  CHECK(s.q_one_mod_ell);
  CHECK(s.index_coprime == s.squarefree_mod_p);
}

}
