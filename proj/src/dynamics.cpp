#include "rikuna/dynamics.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "rikuna/errors.hpp"

namespace rikuna {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t totient(std::uint64_t n) {
  std::uint64_t out = n;
  for (std::uint64_t r : prime_factors_u64(n)) out = out / r * (r - 1);
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> lo, hi;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    lo.push_back(d);
    if (d != n / d) hi.push_back(n / d);
  }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

void require_odd_prime(std::uint64_t ell) {
  if (ell < 3 || !is_prime(ell)) throw ParameterError("l must be an odd prime");
}

// Split n = l^lambda * d with gcd(l, d) = 1.
std::pair<std::uint64_t, std::uint64_t> split_power(std::uint64_t n, std::uint64_t ell) {
  std::uint64_t lambda = 0;
  while (n % ell == 0) n /= ell, ++lambda;
  return {lambda, n};
}

OrbitInfo from_order(PFElem a, std::uint64_t order, std::uint64_t ell) {
  OrbitInfo info;
  info.a = a;
  info.beta_order = order;
  auto [lambda, d] = split_power(order, ell);
  info.pper = lambda;
  info.per = mult_order_mod(ell % d, d);
  return info;
}

}  // namespace

std::uint64_t mult_order_mod(std::uint64_t a, std::uint64_t d) {
  if (d == 0) throw ParameterError("modulus must be positive");
  if (d == 1) return 1;
  if (std::gcd(a, d) != 1) throw DomainError("element is not a unit modulo d");
  std::uint64_t phi = totient(d);
  auto primes = prime_factors_u64(phi);
  return order_from_group(
      phi, primes, [](std::uint64_t x) { return x == 1; },
      [&](std::uint64_t e) {
        std::uint64_t r = 1, b = a % d;
        for (; e; e >>= 1, b = mulmod(b, b, d))
          if (e & 1) r = mulmod(r, b, d);
        return r;
      });
}

FqElem beta_map(const RikunaMap& map, PFElem a) {
  if (!map.has_zeta()) throw PreconditionError("zeta is not in the base field");
  const FieldCtx& F = map.field();
  if (a.is_infinity()) return F.one();
  FqElem v = a.value();
  if (v == map.zeta() || v == map.zeta_inv())
    throw DomainError("beta is undefined at zeta and zeta^-1");
  return F.div(F.sub(v, map.zeta()), F.sub(v, map.zeta_inv()));
}

OrbitInfo orbit_stats(const RikunaMap& map, PFElem a) {
  const FieldCtx& F = map.field();
  if (map.has_zeta()) {
    if (!a.is_infinity() && (a.value() == map.zeta() || a.value() == map.zeta_inv())) {
      OrbitInfo info;
      info.a = a;
      return info;
    }
    return from_order(a, F.element_order(beta_map(map, a)), map.ell());
  }
  QuadraticExtension E(F, map.zeta_plus());
  if (a.is_infinity()) return from_order(a, 1, map.ell());
  // zeta = y and zeta^{-1} = s - y.
  auto x = E.embed(a.value());
  auto zeta = E.y();
  auto zeta_inv = E.sub(E.embed(map.zeta_plus()), zeta);
  auto beta = E.mul(E.sub(x, zeta), E.inv(E.sub(x, zeta_inv)));
  return from_order(a, E.element_order(beta), map.ell());
}

std::uint64_t GraphSummary::total() const {
  std::uint64_t n = fixed_roots;
  for (const CensusRow& r : rows) n += r.count;
  return n;
}

GraphSummary graph_summary(std::uint64_t q, std::uint64_t ell) {
  require_odd_prime(ell);
  if (q < 2 || prime_factors_u64(q).size() != 1) throw ParameterError("q must be a prime power");
  if (q % ell != 1) throw PreconditionError("the census needs q = 1 (mod l)");
  GraphSummary s;
  s.q = q;
  s.ell = ell;
  std::tie(s.lambda, s.omega) = split_power(q - 1, ell);
  s.tail_counts.assign(s.lambda, 0);
  for (std::uint64_t d : divisors(s.omega)) {
    std::uint64_t base_period = mult_order_mod(ell % d, d);
    std::uint64_t div = d;
    for (std::uint64_t j = 0; j <= s.lambda; ++j, div *= ell) {
      CensusRow row;
      row.divisor = div;
      row.count = totient(div);
      row.preperiod = j;
      row.base_period = base_period;
      if (j == 0) row.period = base_period;
      else s.tail_counts[j - 1] += row.count;
      s.rows.push_back(row);
    }
  }
  return s;
}

std::uint64_t nu_ell_pow(std::uint64_t p, std::uint64_t k, std::uint64_t ell) {
  if (ell == p) throw DomainError("l must differ from p");
  require_odd_prime(ell);
  if (!is_prime(p)) throw ParameterError("p must be prime");
  if (k == 0) throw ParameterError("k must be positive");
  std::uint64_t m = mult_order_mod(p % ell, ell);
  if (k % m != 0) return 0;
  Valuation base = val_p(pow_big(BigInt(static_cast<unsigned long>(p)), m) - 1, ell);
  return base.value() + split_power(k, ell).first;
}

std::string FunctionalGraph::name(std::uint64_t v) const {
  return v == field.q() ? "inf" : field.to_string(FqElem{v});
}

FunctionalGraph build_graph(const RikunaMap& map) {
  FunctionalGraph g{map.field(), map.ell(), map.zeta_plus(), {}};
  const FieldCtx& F = map.field();
  g.next.resize(F.q() + 1);
  for (std::uint64_t v = 0; v <= F.q(); ++v)
    g.next[v] = map.phi(PFElem::from_index(F, v)).index(F);
  return g;
}

RikunaMap default_map(std::uint64_t q, std::uint64_t ell) {
  require_odd_prime(ell);
  auto primes = prime_factors_u64(q);
  if (q < 2 || primes.size() != 1) throw ParameterError("q must be a prime power");
  std::uint64_t p = primes.front();
  if (p == ell) throw ParameterError("the characteristic must differ from l");
  unsigned k = 0;
  for (std::uint64_t r = q; r > 1; r /= p) ++k;
  FieldCtx F = FieldCtx::make(p, k);
  if (q % ell == 1) return RikunaMap::canonical(F, ell);
  if ((q + 1) % ell != 0) throw PreconditionError("zeta^+ is not in F_q");
  for (std::uint64_t c = 0; c < q; ++c) {
    FqElem z{c};
    try {
      QuadraticExtension E(F, z);
      auto y = E.y();
      if (E.pow(y, ell) == E.one()) return RikunaMap::from_trace(F, ell, z);
    } catch (const DomainError&) {
    }
  }
  throw PreconditionError("zeta^+ is not in F_q");
}

FunctionalGraph build_graph(std::uint64_t q, std::uint64_t ell) {
  return build_graph(default_map(q, ell));
}

OrbitHistogram census_histogram(const GraphSummary& s) {
  OrbitHistogram h;
  h[{0, 1}] += s.fixed_roots;
  for (const CensusRow& r : s.rows) h[{r.preperiod, r.base_period}] += r.count;
  return h;
}

OrbitHistogram orbit_histogram(const RikunaMap& map) {
  OrbitHistogram h;
  const FieldCtx& F = map.field();
  for (std::uint64_t v = 0; v <= F.q(); ++v) {
    OrbitInfo o = orbit_stats(map, PFElem::from_index(F, v));
    ++h[{o.pper, o.per}];
  }
  return h;
}

std::vector<VertexOrbit> iterate_orbits(const FunctionalGraph& g) {
  const std::uint64_t n = g.size();
  std::vector<VertexOrbit> out(n);
  std::vector<std::uint8_t> state(n, 0);  // 0 new, 1 on the current path, 2 done
  std::vector<std::uint64_t> path;
  for (std::uint64_t s = 0; s < n; ++s) {
    if (state[s]) continue;
    path.clear();
    std::uint64_t v = s;
    while (state[v] == 0) {
      state[v] = 1;
      path.push_back(v);
      v = g.next[v];
    }
    std::size_t stop = path.size();
    if (state[v] == 1) {
      // v closes a new cycle inside the current path.
      std::size_t start = static_cast<std::size_t>(std::find(path.begin(), path.end(), v) - path.begin());
      std::uint64_t len = path.size() - start;
      for (std::size_t i = start; i < path.size(); ++i) {
        out[path[i]] = {0, len};
        state[path[i]] = 2;
      }
      stop = start;
    }
    for (std::size_t i = stop; i-- > 0;) {
      const VertexOrbit& nx = out[g.next[path[i]]];
      out[path[i]] = {nx.pper + 1, nx.per};
      state[path[i]] = 2;
    }
  }
  return out;
}

OrbitHistogram iteration_histogram(const FunctionalGraph& g) {
  OrbitHistogram h;
  for (const VertexOrbit& o : iterate_orbits(g)) ++h[{o.pper, o.per}];
  return h;
}

namespace {

std::uint64_t find_root(std::vector<std::uint64_t>& parent, std::uint64_t v) {
  while (parent[v] != v) v = parent[v] = parent[parent[v]];
  return v;
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

std::string to_dot(const FunctionalGraph& g) {
  const std::uint64_t n = g.size();
  std::vector<std::uint64_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::uint64_t v = 0; v < n; ++v) {
    std::uint64_t a = find_root(parent, v), b = find_root(parent, g.next[v]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  // Components keyed by their least vertex, vertices in increasing order.
  std::map<std::uint64_t, std::vector<std::uint64_t>> comps;
  for (std::uint64_t v = 0; v < n; ++v) comps[find_root(parent, v)].push_back(v);
  std::vector<VertexOrbit> orbits = iterate_orbits(g);

  std::ostringstream os;
  os << "digraph phi {\n";
  os << "  label=\"phi(x; " << g.ell << ") over PF_" << g.field.q() << "\";\n";
  os << "  node [shape=circle, fontsize=10];\n";
  std::size_t idx = 0;
  for (const auto& [root, verts] : comps) {
    os << "  subgraph cluster_" << idx++ << " {\n";
    os << "    style=dashed;\n";
    for (std::uint64_t v : verts) {
      os << "    " << quoted(g.name(v));
      if (orbits[v].pper == 0) os << " [shape=doublecircle, color=red]";
      os << ";\n";
    }
    for (std::uint64_t v : verts) {
      os << "    " << quoted(g.name(v)) << " -> " << quoted(g.name(g.next[v]));
      if (orbits[v].pper == 0) os << " [color=red, penwidth=2]";
      os << ";\n";
    }
    os << "  }\n";
  }
  os << "}\n";
  return os.str();
}

void export_dot(const FunctionalGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << to_dot(g);
  out.close();
  if (!out) throw IoError("failed writing " + path);
}

}  // namespace rikuna
