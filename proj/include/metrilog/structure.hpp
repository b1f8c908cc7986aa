#ifndef METRILOG_STRUCTURE_HPP
#define METRILOG_STRUCTURE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "metrilog/signature.hpp"

namespace metrilog {

/// Interpretation of an indexed constant family: c[i] = prefix[i] for
/// i < prefix.size(), and the tail point for every later index, so the
/// family is total on ℕ while the structure stays finite.
struct FamilyInterp {
  std::vector<int> prefix;
  int tail = 0;

  int at(std::int64_t index) const {
    if (index < 0) throw MetrilogError("negative family index");
    if (index < static_cast<std::int64_t>(prefix.size())) return prefix[static_cast<size_t>(index)];
    return tail;
  }

  bool operator==(const FamilyInterp& o) const { return prefix == o.prefix && tail == o.tail; }
};

/// A finite metric structure: an ordered point set, a rational distance
/// table, and total interpretations of every signature symbol.  Function and
/// predicate tables are stored flat in mixed-radix tuple order.
class MetricStructure {
 public:
  MetricStructure(Signature sig, std::vector<std::string> points);

  const Signature& sig() const { return sig_; }
  const std::vector<std::string>& points() const { return points_; }
  int point_count() const { return static_cast<int>(points_.size()); }
  int point_id(const std::string& name) const;         // -1 when absent
  const std::string& point_name(int id) const { return points_.at(static_cast<size_t>(id)); }

  void set_distance(int a, int b, const Rat& value);    // sets (a,b) only
  const Rat& distance(int a, int b) const;

  void set_function(const std::string& name, std::vector<int> table);
  void set_predicate(const std::string& name, std::vector<Rat> table);
  void set_constant(const std::string& name, int point);
  void set_family(const std::string& name, FamilyInterp interp);

  int apply_function(const std::string& name, const std::vector<int>& args) const;
  const Rat& predicate_value(const std::string& name, const std::vector<int>& args) const;
  int constant_point(const std::string& name) const;
  const FamilyInterp& family(const std::string& name) const;

  const std::map<std::string, std::vector<int>>& function_tables() const { return function_interps_; }
  const std::map<std::string, std::vector<Rat>>& predicate_tables() const { return predicate_interps_; }
  const std::map<std::string, int>& constant_points() const { return constant_interps_; }
  const std::map<std::string, FamilyInterp>& families() const { return family_interps_; }

  /// Throws unless every signature symbol has a total interpretation.
  void check_complete() const;

  size_t tuple_index(const std::vector<int>& args) const;
  size_t tuple_count(int arity) const;
  std::vector<int> tuple_at(size_t index, int arity) const;

  bool operator==(const MetricStructure& o) const;
  bool operator!=(const MetricStructure& o) const { return !(*this == o); }

 private:
  Signature sig_;
  std::vector<std::string> points_;
  std::vector<Rat> metric_;  // n*n, row-major
  std::map<std::string, std::vector<int>> function_interps_;
  std::map<std::string, std::vector<Rat>> predicate_interps_;
  std::map<std::string, int> constant_interps_;
  std::map<std::string, FamilyInterp> family_interps_;
};

// ---------------------------------------------------------------------------
// Validation reports

enum class MetricAxiom { reflexivity, symmetry, triangle, bound };

struct MetricViolation {
  MetricAxiom axiom;
  std::vector<int> points;  // 1, 2 or 3 points depending on the axiom
  std::string detail;
};

struct MetricReport {
  std::vector<MetricViolation> violations;
  std::vector<std::string> warnings;  // pseudometric identifications etc.
  bool ok() const { return violations.empty(); }
};

struct ModulusCounterexample {
  std::vector<int> tuple_a;
  std::vector<int> tuple_b;
  Rat eps;
  Rat delta_at_eps;
  Rat input_sup;    // product-metric distance between the tuples
  Rat output_dist;  // distance of images / predicate value gap
};

struct ModulusReport {
  std::string symbol;
  std::vector<ModulusCounterexample> counterexamples;
  bool ok() const { return counterexamples.empty(); }
};

/// Checks reflexivity, symmetry, the triangle inequality and the diameter
/// bound d <= 1 over all point tuples; violations are report entries, not
/// failures.  Distinct points at distance 0 yield a warning only.
MetricReport validate_metric(const MetricStructure& m);

/// sup-metric on tuples: max over coordinates of d(a_i, b_i).
Rat product_metric(const MetricStructure& m, const std::vector<int>& a, const std::vector<int>& b);

/// Exhaustively decides, for every pair of argument tuples, whether some
/// eps in Q∩(0,1) violates the modulus implication
///   sup_i d(a_i, b_i) < delta(eps)  =>  out(a, b) <= eps,
/// where out is the image distance (functions) or the value gap
/// (predicates).  Since delta is nondecreasing, a violating eps exists for a
/// pair with input sup u and output v exactly when
/// sup { delta(eps) : eps < v } > u; the report carries a concrete witness.
ModulusReport check_modulus(const MetricStructure& m, const std::string& symbol);

/// True when the metric and every predicate take values only in {0, 1}.
bool is_discrete(const MetricStructure& m);

/// Union-find quotient identifying points at distance zero.  `point_map`
/// sends each original point id to its class representative's id in the
/// quotient structure.  Interpretations are taken from representatives; this
/// is well defined whenever the structure satisfies its moduli.
struct QuotientResult {
  MetricStructure structure;
  std::vector<int> point_map;
  bool collapsed = false;  // some identification actually happened
};

QuotientResult quotient_zero_distance(const MetricStructure& m);

}  // namespace metrilog

#endif
