#ifndef METRILOG_SEMANTICS_HPP
#define METRILOG_SEMANTICS_HPP

#include <map>
#include <string>
#include <vector>

#include "metrilog/formula.hpp"
#include "metrilog/structure.hpp"

namespace metrilog {

/// Variable assignment: variable name -> point id of a structure.
using Assignment = std::map<std::string, int>;

/// Sound enclosure of a truth value.  The interval is exact precisely when
/// it is a point; finitary formulas always evaluate exactly, truncated
/// ω-schemas may not.
struct ValueInterval {
  Rat lo;
  Rat hi;

  ValueInterval() : lo(0, 1), hi(0, 1) {}
  ValueInterval(Rat lo_, Rat hi_);

  static ValueInterval point(const Rat& v) { return ValueInterval(v, v); }
  bool exact() const { return lo == hi; }
  bool operator==(const ValueInterval& o) const { return lo == o.lo && hi == o.hi; }
};

struct EvalConfig {
  /// ω-schemas are sampled at instances 0 .. truncation_depth-1.
  int truncation_depth = 16;
};

enum class Verdict { yes, no, unknown };
std::string verdict_name(Verdict v);

/// A named finite list of sentences.
struct Theory {
  std::string name;
  std::vector<FormulaPtr> sentences;
};

/// Finite stand-in for a class of structures: an ordered list over one
/// common signature.
struct Registry {
  std::vector<MetricStructure> structures;

  void check_common_signature() const;
};

// ---------------------------------------------------------------------------

/// Truth-value evaluation per the recursive semantic clauses:
/// atoms and constants are exact points; phi -> psi maps intervals to
/// [min(1-phi.hi+psi.lo, 1), min(1-phi.lo+psi.hi, 1)]; sup_x takes the exact
/// maximum over the finite carrier; explicit schema lists take the exact
/// maximum over their members; ω-template schemas yield
/// [max instance lo below the truncation depth, 1], collapsing to [1,1] when
/// an instance reaches 1.
ValueInterval evaluate(const MetricStructure& m, const FormulaPtr& f, const Assignment& a, const EvalConfig& cfg);

int evaluate_term(const MetricStructure& m, const Term& t, const Assignment& a);

/// yes iff value is exactly 1; no iff hi < 1; unknown otherwise.
Verdict satisfies(const MetricStructure& m, const FormulaPtr& sentence, const EvalConfig& cfg);

struct SentenceCheck {
  FormulaPtr sentence;
  ValueInterval value;
  Verdict verdict;
};

struct ModelsReport {
  Verdict verdict = Verdict::yes;
  std::vector<SentenceCheck> sentences;
};

ModelsReport models(const MetricStructure& m, const Theory& t, const EvalConfig& cfg);

/// Partition of a registry by the value of sigma against [r, s]:
/// inside = interval contained, outside = interval disjoint, unknown = rest.
struct ModIntervalReport {
  Rat lo, hi;
  std::vector<int> inside, outside, unknown;
  std::vector<ValueInterval> values;  // per registry structure
};

ModIntervalReport mod_interval(const Registry& reg, const FormulaPtr& sigma, const Rat& r, const Rat& s,
                               const EvalConfig& cfg);

/// Per-sentence comparison of two structures over a finite sentence pool.
struct CompareEntry {
  FormulaPtr sentence;
  ValueInterval left, right;
  Verdict same;  // yes = provably equal, no = provably different
};

struct CompareReport {
  Verdict verdict = Verdict::yes;
  std::vector<CompareEntry> entries;
};

CompareReport compare_structures(const MetricStructure& m, const MetricStructure& n,
                                 const std::vector<FormulaPtr>& pool, const EvalConfig& cfg);

}  // namespace metrilog

#endif
