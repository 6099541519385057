#include "rikuna/decomposition.hpp"

#include <map>
#include <sstream>

#include "rikuna/closed_forms.hpp"
#include "rikuna/errors.hpp"

namespace rikuna {

namespace {

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::uint64_t max_preperiod(std::uint64_t q, std::uint64_t ell) {
  std::uint64_t m = 0;
  for (q -= 1; q % ell == 0; q /= ell) ++m;
  return m;
}

bool is_root_of_unity(const RikunaMap& map, FqElem t) {
  return map.has_zeta() && (t == map.zeta() || t == map.zeta_inv());
}

FactorPattern from_counts(const std::map<std::uint64_t, std::uint64_t>& roots_by_weight,
                          PatternSource source) {
  FactorPattern p;
  p.source = source;
  for (const auto& [w, roots] : roots_by_weight)
    if (roots) p.entries.push_back({w, roots / w, 1});
  return p;
}

FactorPattern repeated_root(std::uint64_t ell, unsigned n, PatternSource source) {
  FactorPattern p;
  p.source = source;
  p.squarefree = false;
  p.entries.push_back({1, 1, static_cast<unsigned>(ipow(ell, n))});
  return p;
}

FactorPattern printed_pattern(std::uint64_t ell, unsigned n, std::uint64_t s, std::uint64_t M) {
  FactorPattern p;
  p.source = PatternSource::Printed;
  if (n + s <= M) {
    p.entries.push_back({1, ipow(ell, n), 1});
  } else if (s >= 1) {
    p.entries.push_back({ipow(ell, n - M + s), ipow(ell, M - s), 1});
  } else {
    std::uint64_t linear = 0;
    for (std::uint64_t i = 1; i <= M; ++i) linear += ipow(ell, i);
    p.entries.push_back({1, linear, 1});
    for (std::uint64_t i = 1; i <= n - M; ++i) p.entries.push_back({ipow(ell, i), ipow(ell, M), 1});
  }
  return p;
}

}  // namespace

std::uint64_t PrimeSpec::q() const { return ipow(p, k); }

RikunaMap PrimeSpec::make_map(std::uint64_t ell) const {
  if (!is_prime(p)) throw ParameterError("p must be prime");
  if (k < 1) throw ParameterError("k must be positive");
  if (ell < 3 || !is_prime(ell)) throw ParameterError("l must be an odd prime");
  if (p == ell) throw ParameterError("p must differ from l");
  FieldCtx F = FieldCtx::make(p, k);
  if (zeta_plus) {
    try {
      return RikunaMap::from_trace(F, ell, F.from_bigint(*zeta_plus));
    } catch (const DomainError& e) {
      throw PreconditionError(std::string("inconsistent zeta^+ residue: ") + e.what());
    }
  }
  if (ell == 3) return RikunaMap::shanks(F);
  return RikunaMap::canonical(F, ell);
}

std::uint64_t FactorPattern::total_degree() const {
  std::uint64_t s = 0;
  for (const PatternEntry& e : entries) s += e.degree * e.count * e.multiplicity;
  return s;
}

PatternPrediction predict_pattern(const RikunaMap& map, unsigned n, FqElem t) {
  if (!map.has_zeta()) throw PreconditionError("prediction needs q = 1 (mod l)");
  const FieldCtx& F = map.field();
  const std::uint64_t ell = map.ell();
  PatternPrediction out;
  out.M = max_preperiod(F.q(), ell);
  if (is_root_of_unity(map, t)) {
    out.root_of_unity = true;
    out.backward = repeated_root(ell, n, PatternSource::Predicted);
    out.printed = repeated_root(ell, n, PatternSource::Printed);
    return out;
  }
  out.pper = orbit_stats(map, PFElem::finite(t)).pper;

  FunctionalGraph g = build_graph(map);
  std::vector<std::vector<std::uint64_t>> pre(g.size());
  for (std::uint64_t v = 0; v < F.q(); ++v) pre[g.next[v]].push_back(v);

  std::vector<std::uint64_t> rational{t.code};
  std::map<std::uint64_t, std::uint64_t> lifted;  // weight -> number of roots
  for (unsigned level = 0; level < n; ++level) {
    std::map<std::uint64_t, std::uint64_t> next_lifted;
    for (const auto& [w, c] : lifted) next_lifted[w * ell] += c * ell;
    std::vector<std::uint64_t> next_rational;
    for (std::uint64_t b : rational) {
      const auto& r = pre[b];
      if (r.size() == ell) {
        next_rational.insert(next_rational.end(), r.begin(), r.end());
      } else if (r.empty()) {
        next_lifted[ell] += ell;
      } else {
        throw Error("vertex " + g.name(b) + " has " + std::to_string(r.size()) +
                    " rational preimages");
      }
    }
    rational = std::move(next_rational);
    lifted = std::move(next_lifted);
  }
  lifted[1] += rational.size();
  out.backward = from_counts(lifted, PatternSource::Predicted);

  out.printed = printed_pattern(ell, n, out.pper, out.M);
  const std::uint64_t want = ipow(ell, n);
  if (out.printed.total_degree() != want) {
    out.notes.push_back("printed counts give degree sum " +
                        std::to_string(out.printed.total_degree()) + ", expected " +
                        std::to_string(want) + " (l=" + std::to_string(ell) +
                        ", M=" + std::to_string(out.M) + ", n=" + std::to_string(n) + ")");
  }
  out.printed_agrees = out.printed.same_shape(out.backward);
  if (!out.printed_agrees) {
    out.notes.push_back("printed pattern " + to_string(out.printed) +
                        " differs from backward-orbit pattern " + to_string(out.backward));
  }
  return out;
}

FactorPattern observe_pattern(const RikunaMap& map, const PQPair& pq, FqElem t) {
  const FieldCtx& F = map.field();
  FactorPattern p;
  p.source = PatternSource::Observed;
  for (const DegreeCount& dc : degree_profile(F, RikunaMap::rikuna_from_pair(F, pq, t))) {
    p.entries.push_back({dc.degree, dc.count, dc.multiplicity});
    if (dc.multiplicity > 1) p.squarefree = false;
  }
  return p;
}

FactorPattern observe_pattern(const RikunaMap& map, unsigned n, FqElem t) {
  if (n == 0) throw ParameterError("level n must be at least 1");
  return observe_pattern(map, map.pq(n), t);
}

DecompositionReport decompose(unsigned n, const BigInt& t, const PrimeSpec& spec,
                              std::uint64_t ell) {
  if (n == 0) throw ParameterError("level n must be at least 1");
  RikunaMap map = spec.make_map(ell);
  const FieldCtx& F = map.field();
  DecompositionReport rep;
  rep.spec = spec;
  rep.ell = ell;
  rep.n = n;
  rep.t = t;
  rep.t_res = F.from_bigint(t);
  rep.t_res_name = F.to_string(rep.t_res);
  rep.q_one_mod_ell = F.q() % ell == 1;

  PQPair pq = map.pq(n);
  rep.squarefree_mod_p =
      fqpoly::is_squarefree(F, RikunaMap::rikuna_from_pair(F, pq, rep.t_res));
  if (ell == 3) {
    BigInt ind = 0;
    const BigInt p = static_cast<unsigned long>(spec.p);
    if (spec.p == 3) {
      ind = ind3_closed(static_cast<int>(n), t).ind;
    } else if (mod_floor(t * t + t + 1, p) == 0) {
      ind = indp_closed(static_cast<int>(n), t, p);
    }
    rep.index_coprime = ind == 0;
    rep.index_check = "closed-form index at p is " + to_string(ind);
  } else {
    rep.index_coprime = rep.squarefree_mod_p;
    rep.index_check = rep.squarefree_mod_p ? "p does not divide disc r_n"
                                           : "p divides disc r_n";
  }
  rep.applicable = rep.q_one_mod_ell && rep.squarefree_mod_p && rep.index_coprime;
  rep.observed = observe_pattern(map, pq, rep.t_res);
  if (rep.q_one_mod_ell) {
    rep.predicted = predict_pattern(map, n, rep.t_res);
    rep.match = rep.predicted->backward.same_shape(rep.observed);
  }
  return rep;
}

bool irreducibility_certificate(const BigInt& t, const PrimeSpec& spec, std::uint64_t ell) {
  RikunaMap map = spec.make_map(ell);
  const FieldCtx& F = map.field();
  if (F.q() % ell != 1) throw PreconditionError("the certificate needs q = 1 (mod l)");
  FqElem tr = F.from_bigint(t);
  if (is_root_of_unity(map, tr)) return false;
  return orbit_stats(map, PFElem::finite(tr)).pper == max_preperiod(F.q(), ell);
}

std::string to_string(const FactorPattern& p) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < p.entries.size(); ++i) {
    const PatternEntry& e = p.entries[i];
    if (i) os << ", ";
    os << e.count << " x deg " << e.degree;
    if (e.multiplicity > 1) os << "^" << e.multiplicity;
  }
  os << "]";
  return os.str();
}

}  // namespace rikuna
