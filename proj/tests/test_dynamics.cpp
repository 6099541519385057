#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "rikuna/dynamics.hpp"
#include "rikuna/errors.hpp"

using namespace rikuna;

namespace {

struct Row {
  std::uint64_t divisor, count;
  long period;  // -1 on tail rows
  std::uint64_t preperiod;
};

void check_rows(const GraphSummary& s, const std::vector<Row>& want) {
  REQUIRE(s.rows.size() == want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    const CensusRow& r = s.rows[i];
    CHECK(r.divisor == want[i].divisor);
    CHECK(r.count == want[i].count);
    CHECK(r.preperiod == want[i].preperiod);
    if (want[i].period < 0) {
      CHECK_FALSE(r.period.has_value());
    } else {
      REQUIRE(r.period.has_value());
      CHECK(*r.period == static_cast<std::uint64_t>(want[i].period));
    }
  }
}

std::vector<std::pair<std::uint64_t, unsigned>> prime_powers(std::uint64_t bound) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p <= bound; ++p) {
    if (!is_prime(p)) continue;
    std::uint64_t q = p;
    for (unsigned k = 1; q <= bound; ++k, q *= p) out.push_back({p, k});
  }
  return out;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::vector<std::uint64_t> in_degrees(const FunctionalGraph& g) {
  std::vector<std::uint64_t> deg(g.size(), 0);
  for (std::uint64_t v : g.next) ++deg[v];
  return deg;
}

}  // namespace

TEST_SUITE("dynamics") {

TEST_CASE("multiplicative orders") {
  CHECK(mult_order_mod(3, 7) == 6);
  CHECK(mult_order_mod(3, 2) == 1);
  CHECK(mult_order_mod(5, 6) == 2);
  CHECK(mult_order_mod(5, 3) == 2);
  CHECK(mult_order_mod(10, 1) == 1);
  CHECK(mult_order_mod(2, 1023) == 10);
}

TEST_CASE("beta map over F_7") {
  RikunaMap map = RikunaMap::canonical(FieldCtx::make(7, 1), 3);
  REQUIRE(map.zeta().code == 2);
  CHECK(beta_map(map, PFElem::infinity()).code == 1);
  CHECK(beta_map(map, PFElem::finite({1})).code == 5);
  CHECK(beta_map(map, PFElem::finite({3})).code == 6);
  CHECK_THROWS_AS(beta_map(map, PFElem::finite({2})), DomainError);
  CHECK_THROWS_AS(beta_map(map, PFElem::finite({4})), DomainError);
}

TEST_CASE("orbit statistics over F_7") {
  RikunaMap map = RikunaMap::canonical(FieldCtx::make(7, 1), 3);
  OrbitInfo a1 = orbit_stats(map, PFElem::finite({1}));
  CHECK(a1.beta_order == 6);
  CHECK(a1.pper == 1);
  CHECK(a1.per == 1);
  CHECK(map.phi(PFElem::finite({1})) == PFElem::finite({3}));
  OrbitInfo a3 = orbit_stats(map, PFElem::finite({3}));
  CHECK(a3.beta_order == 2);
  CHECK(a3.pper == 0);
  CHECK(a3.per == 1);
  OrbitInfo z = orbit_stats(map, PFElem::finite({2}));
  CHECK(z.beta_order == 0);
  CHECK(z.pper == 0);
  CHECK(z.per == 1);
}

TEST_CASE("census of PF_127 under the cubic map") {
  GraphSummary s = graph_summary(127, 3);
  CHECK(s.lambda == 2);
  CHECK(s.omega == 14);
  check_rows(s, {{1, 1, 1, 0}, {3, 2, -1, 1}, {9, 6, -1, 2},
                 {2, 1, 1, 0}, {6, 2, -1, 1}, {18, 6, -1, 2},
                 {7, 6, 6, 0}, {21, 12, -1, 1}, {63, 36, -1, 2},
                 {14, 6, 6, 0}, {42, 12, -1, 1}, {126, 36, -1, 2}});
  CHECK(s.tail_counts == std::vector<std::uint64_t>{28, 84});
  CHECK(s.total() == 128);
}

TEST_CASE("census of PF_31 under the quintic map") {
  GraphSummary s = graph_summary(31, 5);
  CHECK(s.lambda == 1);
  CHECK(s.omega == 6);
  check_rows(s, {{1, 1, 1, 0}, {5, 4, -1, 1},
                 {2, 1, 1, 0}, {10, 4, -1, 1},
                 {3, 2, 2, 0}, {15, 8, -1, 1},
                 {6, 2, 2, 0}, {30, 8, -1, 1}});
  CHECK(s.tail_counts == std::vector<std::uint64_t>{24});
  CHECK(s.total() == 32);
}

TEST_CASE("census preconditions") {
  CHECK_THROWS_AS(graph_summary(12, 3), ParameterError);
  CHECK_THROWS_AS(graph_summary(7, 9), ParameterError);
  CHECK_THROWS_AS(graph_summary(11, 3), PreconditionError);
}

TEST_CASE("valuations of p^k - 1") {
  CHECK(nu_ell_pow(2, 6, 3) == 2);
  CHECK(nu_ell_pow(2, 5, 3) == 0);
  CHECK_THROWS_AS(nu_ell_pow(3, 2, 3), DomainError);
  for (std::uint64_t ell : {3u, 5u, 7u})
    for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 31u}) {
      if (p == ell) continue;
      for (std::uint64_t k = 1; k <= 40; ++k) {
        BigInt v = pow_big(BigInt(p), k) - 1;
        CHECK(nu_ell_pow(p, k, ell) == val_p(v, ell).value());
      }
    }
}

TEST_CASE("graph of PF_7") {
  FunctionalGraph g = build_graph(7, 3);
  CHECK(g.size() == 8);
  std::vector<VertexOrbit> orb = iterate_orbits(g);
  std::uint64_t fixed = 0, tails = 0;
  for (std::uint64_t v = 0; v < g.size(); ++v) {
    if (g.next[v] == v) ++fixed;
    if (orb[v].pper == 1) ++tails;
  }
  CHECK(fixed == 4);
  CHECK(tails == 4);
  CHECK(g.next[2] == 2);
  CHECK(g.next[4] == 4);
  CHECK(g.name(7) == "inf");
}

TEST_CASE("three-way census agreement") {
  for (std::uint64_t ell : {3u, 5u, 7u})
    for (auto [p, k] : prime_powers(128)) {
      const std::uint64_t q = ipow(p, k);
      if (q % ell != 1) continue;
      CAPTURE(q);
      CAPTURE(ell);
      GraphSummary s = graph_summary(q, ell);
      CHECK(s.total() == q + 1);
      RikunaMap map = RikunaMap::canonical(FieldCtx::make(p, k), ell);
      OrbitHistogram from_census = census_histogram(s);
      CHECK(from_census == orbit_histogram(map));
      CHECK(from_census == iteration_histogram(build_graph(map)));
    }
}

TEST_CASE("beta turns the map into the l-th power") {
  for (std::uint64_t ell : {3u, 5u})
    for (auto [p, k] : prime_powers(128)) {
      if (ipow(p, k) % ell != 1) continue;
      RikunaMap map = RikunaMap::canonical(FieldCtx::make(p, k), ell);
      const FieldCtx& F = map.field();
      for (std::uint64_t i = 0; i <= F.q(); ++i) {
        PFElem a = PFElem::from_index(F, i);
        if (!a.is_infinity() && (a.value() == map.zeta() || a.value() == map.zeta_inv())) continue;
        CHECK(beta_map(map, map.phi(a)) == F.pow(beta_map(map, a), ell));
      }
    }
}

TEST_CASE("preimages and maximal preperiod") {
  for (std::uint64_t ell : {3u, 5u})
    for (auto [p, k] : prime_powers(256)) {
      const std::uint64_t q = ipow(p, k);
      if (q % ell != 1) continue;
      RikunaMap map = default_map(q, ell);
      FunctionalGraph g = build_graph(map);
      GraphSummary s = graph_summary(q, ell);
      const std::uint64_t z = map.zeta().code, zi = map.zeta_inv().code;
      std::vector<VertexOrbit> orb = iterate_orbits(g);
      std::vector<std::uint64_t> deg = in_degrees(g);
      std::uint64_t max_pper = 0;
      for (std::uint64_t v = 0; v < g.size(); ++v) {
        max_pper = std::max(max_pper, orb[v].pper);
        if (v == z || v == zi) {
          // beta sends the fixed points to 0 and infinity: no other preimage.
          CHECK(deg[v] == 1);
        } else if (orb[v].pper < s.lambda) {
          CHECK(deg[v] == ell);
        } else {
          CHECK(deg[v] == 0);
        }
      }
      CHECK(max_pper == s.lambda);
    }
}

TEST_CASE("swapping zeta and its inverse") {
  for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{{7, 1}, {13, 1}, {31, 1}, {2, 6}, {5, 2}}) {
    FieldCtx F = FieldCtx::make(p, k);
    RikunaMap a = RikunaMap::canonical(F, 3);
    RikunaMap b = RikunaMap::with_zeta(F, 3, a.zeta_inv());
    FunctionalGraph ga = build_graph(a), gb = build_graph(b);
    CHECK(iteration_histogram(ga) == iteration_histogram(gb));
    std::vector<std::uint64_t> da = in_degrees(ga), db = in_degrees(gb);
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    CHECK(da == db);
  }
}

TEST_CASE("orbits through the quadratic extension") {
  for (auto [q, ell] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{{5, 3}, {11, 3}, {17, 3}, {19, 5}, {29, 5}, {13, 7}}) {
    CAPTURE(q);
    RikunaMap map = default_map(q, ell);
    CHECK_FALSE(map.has_zeta());
    CHECK_THROWS_AS(beta_map(map, PFElem::infinity()), PreconditionError);
    FunctionalGraph g = build_graph(map);
    CHECK(orbit_histogram(map) == iteration_histogram(g));
  }
}

TEST_CASE("DOT output") {
  FunctionalGraph g = build_graph(31, 5);
  const std::string dot = to_dot(g);
  CHECK(dot == to_dot(build_graph(31, 5)));
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(dot.find("\"inf\"") != std::string::npos);
  CHECK(dot.find("doublecircle") != std::string::npos);
  std::size_t edges = 0;
  for (std::size_t pos = dot.find("->"); pos != std::string::npos; pos = dot.find("->", pos + 2)) ++edges;
  CHECK(edges == g.size());

  const auto path = std::filesystem::temp_directory_path() / "rikuna_dot_test.dot";
  export_dot(g, path.string());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == dot);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(export_dot(g, "/nonexistent-dir/graph.dot"), IoError);
}

}
