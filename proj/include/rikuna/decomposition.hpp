#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rikuna/dynamics.hpp"
#include "rikuna/finite_field.hpp"
#include "rikuna/rikuna.hpp"

namespace rikuna {

/// A prime of norm q = p^k, given by the residue of zeta^+. Without an
/// explicit residue, l = 3 uses -1 and other l use the canonical zeta.
struct PrimeSpec {
  std::uint64_t p = 0;
  unsigned k = 1;
  std::optional<BigInt> zeta_plus;

  std::uint64_t q() const;
  /// Throws PreconditionError when the residue is inconsistent with l.
  RikunaMap make_map(std::uint64_t ell) const;
};

struct PatternEntry {
  std::uint64_t degree = 0;
  std::uint64_t count = 0;
  unsigned multiplicity = 1;
  bool operator==(const PatternEntry&) const = default;
};

enum class PatternSource { Predicted, Printed, Observed };

struct FactorPattern {
  std::vector<PatternEntry> entries;  // increasing degree, then multiplicity
  PatternSource source = PatternSource::Predicted;
  bool squarefree = true;

  std::uint64_t total_degree() const;
  /// Same entries and squarefreeness; the source is ignored.
  bool same_shape(const FactorPattern& o) const {
    return entries == o.entries && squarefree == o.squarefree;
  }
};

struct PatternPrediction {
  FactorPattern backward;  // backward-orbit weights
  FactorPattern printed;   // closed case formulas
  std::uint64_t pper = 0;
  std::uint64_t M = 0;
  bool root_of_unity = false;  // t = zeta^{+-1}
  bool printed_agrees = true;
  std::vector<std::string> notes;  // printed-formula discrepancies
};

/// Pattern of r_n(x, t; l) over F_q from the backward orbit of t. Requires
/// zeta in F_q (PreconditionError otherwise).
PatternPrediction predict_pattern(const RikunaMap& map, unsigned n, FqElem t);

/// Degree histogram of r_n(x, t; l) over F_q from its factorization.
FactorPattern observe_pattern(const RikunaMap& map, unsigned n, FqElem t);
/// Same, with (P_n, Q_n) supplied.
FactorPattern observe_pattern(const RikunaMap& map, const PQPair& pq, FqElem t);

struct DecompositionReport {
  PrimeSpec spec;
  std::uint64_t ell = 0;
  unsigned n = 0;
  BigInt t;
  FqElem t_res;
  std::string t_res_name;
  bool q_one_mod_ell = false;
  bool squarefree_mod_p = false;
  bool index_coprime = false;
  std::string index_check;  // how index_coprime was decided
  bool applicable = false;
  std::optional<PatternPrediction> predicted;
  FactorPattern observed;
  bool match = false;
};

/// Predicted and observed factorization of r_n(x, t; l) modulo the prime
/// with the Dedekind hypotheses recorded.
DecompositionReport decompose(unsigned n, const BigInt& t, const PrimeSpec& spec,
                              std::uint64_t ell);

/// True iff t mod the prime has the maximal preperiod M, which makes
/// r_n(x, t; l) irreducible for every n >= 1.
bool irreducibility_certificate(const BigInt& t, const PrimeSpec& spec, std::uint64_t ell);

std::string to_string(const FactorPattern& p);

}  // namespace rikuna
