#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rikuna/finite_field.hpp"
#include "rikuna/rikuna.hpp"

namespace rikuna {

/// Multiplicative order of a modulo d (1 when d = 1).
std::uint64_t mult_order_mod(std::uint64_t a, std::uint64_t d);

/// (a - zeta)/(a - zeta^{-1}) with beta(inf) = 1. Needs zeta in the field;
/// throws DomainError at a = zeta^{+-1}.
FqElem beta_map(const RikunaMap& map, PFElem a);

struct OrbitInfo {
  PFElem a;
  std::uint64_t beta_order = 0;  // 0 for the fixed points zeta^{+-1}
  std::uint64_t pper = 0;
  std::uint64_t per = 1;
  std::uint64_t weight = 1;
};

/// Preperiod and period from the order of beta_a. When zeta is not in F_q
/// the order is taken in F_q[y]/(y^2 - zeta^+ y + 1).
OrbitInfo orbit_stats(const RikunaMap& map, PFElem a);

struct CensusRow {
  std::uint64_t divisor = 0;
  std::uint64_t count = 0;
  std::optional<std::uint64_t> period;  // set on the periodic rows only
  std::uint64_t preperiod = 0;
  std::uint64_t base_period = 0;        // ord_d(l) for the row's l-free part
};

struct GraphSummary {
  std::uint64_t q = 0;
  std::uint64_t ell = 0;
  std::uint64_t lambda = 0;
  std::uint64_t omega = 0;
  std::vector<CensusRow> rows;            // grouped by d | omega, then d l^j
  std::vector<std::uint64_t> tail_counts; // points of preperiod k = 1..lambda
  std::uint64_t fixed_roots = 2;          // zeta and zeta^{-1}

  std::uint64_t total() const;
};

/// Census of the graph of phi on PF_q. Throws ParameterError unless q is a
/// prime power and l an odd prime, PreconditionError unless q = 1 (mod l).
GraphSummary graph_summary(std::uint64_t q, std::uint64_t ell);

/// nu_l(p^k - 1) from the order m of p mod l: nu_l(p^m - 1) + nu_l(k) when
/// m | k, else 0. Throws DomainError when l = p.
std::uint64_t nu_ell_pow(std::uint64_t p, std::uint64_t k, std::uint64_t ell);

/// Functional graph of phi on PF_q; vertex i is the element with code i,
/// vertex q is infinity.
struct FunctionalGraph {
  FieldCtx field;
  std::uint64_t ell = 0;
  FqElem zeta_plus;
  std::vector<std::uint64_t> next;

  std::uint64_t size() const { return next.size(); }
  std::string name(std::uint64_t v) const;
};

FunctionalGraph build_graph(const RikunaMap& map);
/// Canonical zeta when q = 1 (mod l); otherwise the least zeta^+ whose
/// quadratic has roots of order l over F_q.
FunctionalGraph build_graph(std::uint64_t q, std::uint64_t ell);

/// The map used by build_graph(q, l).
RikunaMap default_map(std::uint64_t q, std::uint64_t ell);

using OrbitHistogram = std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t>;

/// (pper, per) counts implied by the census.
OrbitHistogram census_histogram(const GraphSummary& s);
/// (pper, per) counts from orbit_stats over every vertex.
OrbitHistogram orbit_histogram(const RikunaMap& map);
/// (pper, per) counts by walking the graph.
OrbitHistogram iteration_histogram(const FunctionalGraph& g);

struct VertexOrbit {
  std::uint64_t pper = 0;
  std::uint64_t per = 0;
};
std::vector<VertexOrbit> iterate_orbits(const FunctionalGraph& g);

/// DOT text: one cluster per weakly connected component, cycle vertices
/// and edges highlighted.
std::string to_dot(const FunctionalGraph& g);
/// Writes to_dot(g) to path; throws IoError naming the path.
void export_dot(const FunctionalGraph& g, const std::string& path);

}  // namespace rikuna
