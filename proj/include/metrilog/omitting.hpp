#ifndef METRILOG_OMITTING_HPP
#define METRILOG_OMITTING_HPP

#include <optional>
#include <string>
#include <vector>

#include "metrilog/semantics.hpp"

namespace metrilog {

/// A partial type: finitely many formulas in a fixed tuple of free
/// variables.  Members may contain ω-schemas; realization checks then carry
/// three-valued verdicts under truncation.
struct PartialType {
  std::string name;
  std::vector<std::string> variables;
  std::vector<FormulaPtr> formulas;

  void check_well_formed() const;  // declared variables cover all free variables
};

/// Candidate witnesses for principality checks: the triples tried are the
/// product formulas x term_tuples x thresholds, in that nesting order.
struct WitnessPool {
  std::vector<std::string> variables;            // the tuple of pool variables ȳ
  std::vector<FormulaPtr> formulas;              // candidate phi(ȳ)
  std::vector<std::vector<Term>> term_tuples;    // each of the type's arity
  std::vector<Rat> thresholds;                   // r in (0, 1)
};

/// Reading of "T ∪ {phi} is satisfiable" for the witness formula:
/// value exactly 1, or merely positive.
enum class SatStrictness { value_one, value_positive };

// ---------------------------------------------------------------------------

struct RealizeReport {
  Verdict verdict = Verdict::yes;
  std::vector<SentenceCheck> members;  // member formulas instantiated at the tuple
};

/// Does the tuple make every member of the type true?
RealizeReport realizes(const MetricStructure& m, const PartialType& type, const std::vector<int>& tuple,
                       const EvalConfig& cfg);

struct OmitsReport {
  Verdict verdict = Verdict::yes;
  std::optional<std::vector<int>> realizing_tuple;   // when verdict == no
  std::optional<std::vector<int>> undecided_tuple;   // when verdict == unknown
};

/// yes iff no tuple of the structure realizes the type.
OmitsReport omits(const MetricStructure& m, const PartialType& type, const EvalConfig& cfg);

/// Σ^δ: each member becomes
///   sup_{y_1} ... sup_{y_n} ((d(x_1,y_1) <= δ /\ ... /\ d(x_n,y_n) <= δ) /\ σ(ȳ))
/// with fresh bound variables; sentences (n = 0) are unchanged.
PartialType thicken(const PartialType& type, const Rat& delta);

/// The term-substitution closure helper: for each term tuple, the type
/// Σ(t_1(ȳ), ..., t_n(ȳ)) over the new variable tuple ȳ.
std::vector<PartialType> apply_term_tuples(const PartialType& type, const std::vector<std::string>& new_variables,
                                           const std::vector<std::vector<Term>>& term_tuples);

// ---------------------------------------------------------------------------

struct PairWitness {
  int structure = 0;
  std::vector<int> tuple;
  ValueInterval phi_value;
  Verdict realize_verdict = Verdict::yes;
};

struct TripleTrace {
  size_t formula_index = 0;
  size_t terms_index = 0;
  size_t threshold_index = 0;
  Verdict verdict = Verdict::unknown;            // yes = this triple witnesses principality
  std::optional<PairWitness> sat_witness;        // first (M, b̄) satisfying phi
  std::optional<PairWitness> counterexample;     // pair refuting (or blocking) entailment
  std::string note;
};

struct PrincipalityReport {
  Verdict verdict = Verdict::unknown;
  std::optional<TripleTrace> witness;   // accepted triple, when verdict == yes
  std::vector<TripleTrace> traces;      // one per pool triple, in pool order
  bool vacuous = false;                 // entailment held with nothing to check
  std::string note;
};

/// Relativized principality: some pool triple (phi, t̄, r) must have
/// phi satisfiable in a registry model of T (per the strictness flag) and
/// every registry model of T must realize the type at t̄(b̄) whenever
/// phi(b̄) >= r.  Unknown evidence never counts toward acceptance.
PrincipalityReport principal_over(const Theory& t, const PartialType& type, const WitnessPool& pool,
                                  const Registry& registry, const EvalConfig& cfg,
                                  SatStrictness strictness = SatStrictness::value_one);

struct MetricPrincipalityReport {
  Verdict verdict = Verdict::yes;
  bool vacuous_grid = false;  // empty delta grid
  std::vector<Rat> deltas;
  std::vector<PrincipalityReport> per_delta;
};

/// Runs principal_over on the δ-thickened type for every δ in the grid;
/// finite evidence only, never a proof over all δ > 0.
MetricPrincipalityReport metrically_principal_over(const Theory& t, const PartialType& type, const WitnessPool& pool,
                                                   const Registry& registry, const std::vector<Rat>& deltas,
                                                   const EvalConfig& cfg,
                                                   SatStrictness strictness = SatStrictness::value_one);

struct OmitSearchRow {
  int structure = 0;
  Verdict models_verdict = Verdict::yes;
  std::vector<Verdict> omits_verdicts;                    // per type (empty when not a model)
  std::optional<std::pair<size_t, std::vector<int>>> realized;  // type index + tuple, when some omits == no
};

struct OmitSearchReport {
  std::optional<int> found;  // registry index of the first structure passing every check
  std::vector<OmitSearchRow> rows;
};

/// Deterministic scan in registry order for a model of T omitting every
/// listed type.
OmitSearchReport omit_search(const Theory& t, const std::vector<PartialType>& types, const Registry& registry,
                             const EvalConfig& cfg);

}  // namespace metrilog

#endif
