#include "rikuna/rikuna.h"

#include <atomic>
#include <exception>
#include <string>

#include "json.hpp"

#include "rikuna/closed_forms.hpp"
#include "rikuna/decomposition.hpp"
#include "rikuna/dynamics.hpp"
#include "rikuna/errors.hpp"
#include "rikuna/montes.hpp"
#include "rikuna/rikuna.hpp"

using nlohmann::json;
using namespace rikuna;

struct rk_report {
  std::string text;
};

struct rk_map {
  RikunaMap map;
};

namespace {

thread_local std::string g_last_error;
std::atomic<std::uint64_t> g_seed{kDefaultFactorSeed};

template <typename Fn>
rk_status guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return RK_OK;
  } catch (const ParameterError& e) {
    g_last_error = e.what();
    return RK_ERR_PARAMETER;
  } catch (const PreconditionError& e) {
    g_last_error = e.what();
    return RK_ERR_PRECONDITION;
  } catch (const DomainError& e) {
    g_last_error = e.what();
    return RK_ERR_DOMAIN;
  } catch (const IoError& e) {
    g_last_error = e.what();
    return RK_ERR_IO;
  } catch (const json::exception& e) {
    g_last_error = e.what();
    return RK_ERR_PARAMETER;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RK_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return RK_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw ParameterError(std::string(what) + " is null");
}

BigInt arg_int(const char* text, const char* what) {
  require(text, what);
  return parse_bigint(text);
}

rk_report* make_report(const json& j) { return new rk_report{j.dump()}; }

std::string str(const BigInt& v) { return to_string(v); }

json factored_json(const FactoredInt& f) {
  json factors = json::array();
  for (const auto& [p, e] : f.factors) factors.push_back({{"p", str(p)}, {"e", e}});
  json j{{"sign", f.sign}, {"factors", factors}, {"complete", f.complete}};
  j["cofactor"] = f.complete ? json(nullptr) : json(str(f.cofactor));
  j["value"] = f.complete ? json(str(f.value())) : json(nullptr);
  return j;
}

PrimeSpec make_spec(std::uint64_t p, unsigned k, const char* zeta_plus) {
  PrimeSpec spec{p, k, std::nullopt};
  if (zeta_plus) spec.zeta_plus = parse_bigint(zeta_plus);
  return spec;
}

json pattern_json(const FactorPattern& p) {
  json entries = json::array();
  for (const PatternEntry& e : p.entries)
    entries.push_back({{"degree", e.degree}, {"count", e.count}, {"multiplicity", e.multiplicity}});
  return {{"factors", entries},
          {"squarefree", p.squarefree},
          {"total_degree", p.total_degree()},
          {"text", to_string(p)}};
}

const char* branch_name(Index3Branch b) {
  return b == Index3Branch::TOneMod3 ? "t = 1 mod 3" : "t != 1 mod 3";
}

}  // namespace

extern "C" {

const char* rk_version(void) { return "1.0.0"; }

const char* rk_last_error(void) { return g_last_error.c_str(); }

const char* rk_status_name(rk_status s) {
  switch (s) {
    case RK_OK: return "ok";
    case RK_ERR_PARAMETER: return "parameter error";
    case RK_ERR_DOMAIN: return "domain error";
    case RK_ERR_PRECONDITION: return "precondition error";
    case RK_ERR_IO: return "i/o error";
    case RK_ERR_INTERNAL: return "internal error";
    case RK_ERR_NULL: return "null argument";
  }
  return "unknown status";
}

void rk_set_factor_seed(uint64_t seed) { g_seed = seed; }
uint64_t rk_factor_seed(void) { return g_seed; }

const char* rk_report_json(const rk_report* r) { return r ? r->text.c_str() : nullptr; }
void rk_report_free(rk_report* r) { delete r; }

rk_status rk_poly(int n, const char* t, rk_report** out) {
  if (!out) return RK_ERR_NULL;
  return guarded([&] {
    BigInt tv = arg_int(t, "t");
    ZPoly r = rikuna_z3(n, tv);
    json coeffs = json::array();
    for (const BigInt& c : r.coeffs()) coeffs.push_back(str(c));
    *out = make_report({{"n", n},
                        {"t", str(tv)},
                        {"ell", 3},
                        {"degree", r.degree()},
                        {"order", "ascending"},
                        {"coefficients", coeffs},
                        {"polynomial", r.to_string()},
                        {"warnings", json::array()}});
  });
}

rk_status rk_poly_mod(int n, const char* t, uint32_t ell, uint64_t p, unsigned k,
                      const char* zeta_plus, rk_report** out) {
  if (!out) return RK_ERR_NULL;
  return guarded([&] {
    BigInt tv = arg_int(t, "t");
    if (n < 0) throw ParameterError("level n must be nonnegative");
    RikunaMap map = make_spec(p, k, zeta_plus).make_map(ell);
    const FieldCtx& F = map.field();
    FqPoly r = map.rikuna(static_cast<unsigned>(n), F.from_bigint(tv));
    json coeffs = json::array();
    for (FqElem c : r.c) coeffs.push_back(F.to_string(c));
    json j{{"n", n},
           {"t", str(tv)},
           {"ell", ell},
           {"p", p},
           {"k", k},
           {"zeta_plus", F.to_string(map.zeta_plus())},
           {"degree", r.degree()},
           {"order", "ascending"},
           {"coefficients", coeffs},
           {"polynomial", fqpoly::to_string(F, r)},
           {"warnings", json::array()}};
    if (map.has_zeta()) j["zeta"] = F.to_string(map.zeta());
    *out = make_report(j);
  });
}

rk_status rk_disc(int n, const char* t, rk_report** out) {
  if (!out) return RK_ERR_NULL;
  return guarded([&] {
    BigInt tv = arg_int(t, "t");
    DiscReport rep = field_disc(n, tv);
    json warnings = json::array();
    json primes = json::array();
    for (const PrimeDisc& pd : rep.primes) {
      primes.push_back({{"p", str(pd.p)},
                        {"poly_valuation", pd.poly_val},
                        {"index", str(pd.index)},
                        {"field_valuation", str(pd.field_val)},
                        {"printed_valuation", str(pd.printed_val)},
                        {"mismatch", pd.mismatch}});
      if (pd.mismatch) {
        warnings.push_back("printed field discriminant exponent at p=" + str(pd.p) + " is " +
                           str(pd.printed_val) + ", canonical is " + str(pd.field_val));
      }
    }
    if (!rep.complete) {
      warnings.push_back("t^2+t+1 has an unfactored cofactor " + str(rep.cofactor) +
                         "; report is partial");
    }
    json j{{"n", n},
           {"t", str(tv)},
           {"poly_discriminant", factored_json(rep.poly_disc.value)},
           {"primes", primes},
           {"complete", rep.complete},
           {"discrepancy", rep.discrepancy},
           {"warnings", warnings}};
    j["field_discriminant"] = rep.field_disc ? json(str(*rep.field_disc)) : json(nullptr);
    j["printed_field_discriminant"] =
        rep.printed_disc ? json(str(*rep.printed_disc)) : json(nullptr);
    *out = make_report(j);
  });
}

rk_status rk_index(int n, const char* t, const char* p, int check_montes, rk_report** out) {
  if (!out) return RK_ERR_NULL;
  return guarded([&] {
    BigInt tv = arg_int(t, "t");
    const BigInt norm = tv * tv + tv + 1;
    json warnings = json::array();
    std::vector<BigInt> primes;
    if (p) {
      BigInt pv = parse_bigint(p);
      if (!is_prime(pv)) throw ParameterError("p must be prime");
      primes.push_back(pv);
    } else {
      primes.push_back(3);
      FactoredInt nf = factor_integer(norm);
      for (const auto& [q, e] : nf.factors)
        if (q != 3) primes.push_back(q);
      if (!nf.complete)
        warnings.push_back("t^2+t+1 has an unfactored cofactor " + str(nf.cofactor));
    }
    ZPoly f;
    if (check_montes) {
      if (n > 4) {
        warnings.push_back("Newton polygon check skipped for n > 4");
        check_montes = 0;
      } else {
        f = rikuna_z3(n, tv);
      }
    }
    bool mismatch = false;
    json entries = json::array();
    for (const BigInt& pv : primes) {
      json e{{"p", str(pv)}};
      BigInt ind;
      if (pv == 3) {
        Index3Result r = ind3_closed(n, tv);
        ind = r.ind;
        e["V"] = r.V;
        e["E"] = str(r.E);
        e["branch"] = branch_name(r.branch);
      } else if (mod_floor(norm, pv) == 0) {
        ind = indp_closed(n, tv, pv);
        e["v"] = val_p(norm, pv).value();
      } else {
        ind = 0;
        e["note"] = "p does not divide disc r_n";
      }
      e["index"] = str(ind);
      if (check_montes) {
        if (pv > BigInt(static_cast<unsigned long>(UINT32_MAX))) {
          warnings.push_back("Newton polygon check skipped for p=" + str(pv));
        } else {
          IndexReport m = index_p(f, to_u64(pv), g_seed);
          bool agrees = m.exact && BigInt(static_cast<unsigned long>(m.total)) == ind;
          e["montes"] = {{"total", m.total}, {"exact", m.exact}, {"agrees", agrees}};
          if (!agrees) {
            mismatch = true;
            warnings.push_back("closed form and Newton polygon disagree at p=" + str(pv));
          }
        }
      }
      entries.push_back(e);
    }
    *out = make_report({{"n", n},
                        {"t", str(tv)},
                        {"primes", entries},
                        {"mismatch", mismatch},
                        {"warnings", warnings}});
  });
}

rk_status rk_index_poly(const char* coeffs_json, uint64_t p, rk_report** out) {
  if (!out) return RK_ERR_NULL;
  return guarded([&] {
    require(coeffs_json, "coefficients");
    json arr = json::parse(coeffs_json);
    if (!arr.is_array()) throw ParameterError("coefficients must be a JSON array");
    std::vector<BigInt> c;
    for (const json& v : arr) {
      if (v.is_string()) c.push_back(parse_bigint(v.get<std::string>()));
      else if (v.is_number_integer()) c.push_back(parse_bigint(v.dump()));
      else throw ParameterError("coefficients must be integers or decimal strings");
    }
    ZPoly f(c);
    IndexReport rep = index_p(f, p, g_seed);
    json factors = json::array();
    for (const FactorIndex& fi : rep.factors) {
      json devc = json::array();
      for (const ZPoly& a : fi.development.coeffs) devc.push_back(a.to_string());
      FieldCtx R = residue_field(fi.development);
      json sides = json::array();
      for (const Side& s : fi.polygon.sides) {
        sides.push_back({{"from", {s.left.x, s.left.y}},
                         {"to", {s.right.x, s.right.y}},
                         {"slope", std::to_string(s.slope.num) + "/" + std::to_string(s.slope.den)},
                         {"degree", s.degree},
                         {"residual", fqpoly::to_string(R, s.residual, "y")},
                         {"separable", s.separable}});
      }
      factors.push_back({{"phi", fi.phi.to_string()},
                         {"multiplicity", fi.multiplicity},
                         {"development", devc},
                         {"sides", sides},
                         {"lattice_points", fi.lattice},
                         {"index", fi.index},
                         {"regular", fi.regular}});
    }
    json warnings = json::array();
    if (!rep.exact) warnings.push_back("not p-regular; total is a lower bound");
    *out = make_report({{"p", p},
                        {"polynomial", f.to_string()},
                        {"factors", factors},
                        {"total", rep.total},
                        {"exact", rep.exact},
                        {"warnings", warnings}});
  });
}

rk_status rk_graph_census(uint64_t q, uint32_t ell, rk_report** out) {
  if (!out) return RK_ERR_NULL;
  return guarded([&] {
    GraphSummary s = graph_summary(q, ell);
    RikunaMap map = default_map(q, ell);
    const FieldCtx& F = map.field();
    json rows = json::array();
    for (const CensusRow& r : s.rows) {
      json period = r.period ? json(*r.period) : json("-");
      rows.push_back({r.divisor, r.count, period, r.preperiod});
    }
    *out = make_report({{"q", q},
                        {"ell", ell},
                        {"lambda", s.lambda},
                        {"omega", s.omega},
                        {"columns", {"divisor", "count", "period", "preperiod"}},
                        {"rows", rows},
                        {"tail_counts", s.tail_counts},
                        {"fixed_points", {F.to_string(map.zeta()), F.to_string(map.zeta_inv())}},
                        {"total", s.total()},
                        {"warnings", json::array()}});
  });
}

rk_status rk_graph_dot(uint64_t q, uint32_t ell, const char* path) {
  return guarded([&] {
    require(path, "path");
    export_dot(build_graph(q, ell), path);
  });
}

rk_status rk_decompose(unsigned n, const char* t, uint64_t p, unsigned k, const char* zeta_plus,
                       uint32_t ell, rk_report** out) {
  if (!out) return RK_ERR_NULL;
  return guarded([&] {
    BigInt tv = arg_int(t, "t");
    DecompositionReport rep = decompose(n, tv, make_spec(p, k, zeta_plus), ell);
    json warnings = json::array();
    json j{{"n", n},
           {"t", str(tv)},
           {"ell", ell},
           {"p", p},
           {"k", k},
           {"q", rep.spec.q()},
           {"t_residue", rep.t_res_name},
           {"q_one_mod_ell", rep.q_one_mod_ell},
           {"squarefree_mod_p", rep.squarefree_mod_p},
           {"index_coprime", rep.index_coprime},
           {"index_check", rep.index_check},
           {"applicable", rep.applicable},
           {"observed", pattern_json(rep.observed)},
           {"match", rep.match}};
    if (rep.predicted) {
      const PatternPrediction& pr = *rep.predicted;
      j["predicted"] = pattern_json(pr.backward);
      j["printed"] = pattern_json(pr.printed);
      j["pper"] = pr.pper;
      j["M"] = pr.M;
      j["root_of_unity"] = pr.root_of_unity;
      for (const std::string& note : pr.notes) warnings.push_back(note);
      if (!rep.match) warnings.push_back("predicted and observed patterns differ");
    } else {
      j["predicted"] = nullptr;
      warnings.push_back("q is not 1 mod l; no prediction");
    }
    if (!rep.applicable) warnings.push_back("Dedekind hypotheses fail; no statement about primes");
    json inertia = json::array();
    if (rep.applicable) {
      for (const PatternEntry& e : rep.observed.entries)
        inertia.push_back({{"inertia_degree", e.degree}, {"primes", e.count}});
    }
    j["inertia"] = inertia;
    j["warnings"] = warnings;
    *out = make_report(j);
  });
}

rk_status rk_irreducibility_certificate(const char* t, uint64_t p, unsigned k,
                                        const char* zeta_plus, uint32_t ell, int* out) {
  if (!out) return RK_ERR_NULL;
  return guarded([&] {
    *out = irreducibility_certificate(arg_int(t, "t"), make_spec(p, k, zeta_plus), ell) ? 1 : 0;
  });
}

rk_status rk_map_new(uint64_t p, unsigned k, uint32_t ell, const char* zeta_plus, rk_map** out) {
  if (!out) return RK_ERR_NULL;
  return guarded([&] { *out = new rk_map{make_spec(p, k, zeta_plus).make_map(ell)}; });
}

void rk_map_free(rk_map* m) { delete m; }

uint64_t rk_map_q(const rk_map* m) { return m ? m->map.field().q() : 0; }

rk_status rk_map_phi(const rk_map* m, uint64_t vertex, uint64_t* out) {
  if (!m || !out) return RK_ERR_NULL;
  return guarded([&] {
    const FieldCtx& F = m->map.field();
    if (vertex > F.q()) throw ParameterError("vertex out of range");
    *out = m->map.phi(PFElem::from_index(F, vertex)).index(F);
  });
}

rk_status rk_map_orbit(const rk_map* m, uint64_t vertex, uint64_t* pper, uint64_t* per) {
  if (!m || !pper || !per) return RK_ERR_NULL;
  return guarded([&] {
    const FieldCtx& F = m->map.field();
    if (vertex > F.q()) throw ParameterError("vertex out of range");
    OrbitInfo o = orbit_stats(m->map, PFElem::from_index(F, vertex));
    *pper = o.pper;
    *per = o.per;
  });
}

}  // extern "C"
