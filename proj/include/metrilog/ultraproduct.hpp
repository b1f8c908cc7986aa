#ifndef METRILOG_ULTRAPRODUCT_HPP
#define METRILOG_ULTRAPRODUCT_HPP

#include <optional>
#include <vector>

#include "metrilog/semantics.hpp"

namespace metrilog {

/// Ultrafilters with a computable shadow: a principal ultrafilter fixed at
/// one index, or the common behaviour of every non-principal ultrafilter on
/// ω (usable only where all of them agree, i.e. on eventually-constant
/// data).
struct UltrafilterSpec {
  enum class Kind { principal, frechet_limit };
  Kind kind = Kind::principal;
  std::int64_t index = 0;

  static UltrafilterSpec principal(std::int64_t k) { return {Kind::principal, k}; }
  static UltrafilterSpec frechet() { return {Kind::frechet_limit, 0}; }
};

/// Either a finite family of structures, or an ω-sequence presented as a
/// finite prefix plus an eventually-repeated tail.
class StructureSequence {
 public:
  static StructureSequence finite_family(std::vector<MetricStructure> family);
  static StructureSequence omega(std::vector<MetricStructure> prefix, MetricStructure tail);

  bool is_omega() const { return tail_.has_value(); }
  const std::vector<MetricStructure>& prefix() const { return members_; }
  const MetricStructure& tail() const;
  size_t family_size() const { return members_.size(); }

  const MetricStructure& at(std::int64_t k) const;

  const Signature& sig() const;

 private:
  std::vector<MetricStructure> members_;
  std::optional<MetricStructure> tail_;
};

struct UltraproductResult {
  MetricStructure structure;
  /// Which member the product projects to: prefix/family index, or -1 for
  /// the tail.
  std::int64_t source_index = 0;
  /// Point-level map from the source member's points onto the product's
  /// points (the d = 0 quotient map; a bijection unless `collapsed`).
  std::vector<int> witness;
  bool collapsed = false;
};

/// Computable ultraproduct of the sequence along the ultrafilter.
/// Principal(k) projects to coordinate k; a Fréchet limit over an
/// eventually-constant sequence collapses to the tail.  Both are followed by
/// the pseudometric quotient identifying points at distance 0.  A Fréchet
/// limit over a plain finite family is not computable.
UltraproductResult ultraproduct(const StructureSequence& seq, const UltrafilterSpec& d);

/// An ω-sequence of truth values: finite prefix plus a tail description.
/// The tail is a rational sequence expression (a constant, or an affine
/// expression converging to its base with explicit rate a/(n+b)); it is
/// evaluated at the global index n.
struct ValueSequence {
  std::vector<Rat> prefix;
  RationalSeqExpr tail;

  static ValueSequence constant(const Rat& value);
  static ValueSequence with_prefix(std::vector<Rat> prefix, RationalSeqExpr tail);

  Rat at(std::int64_t n) const;
};

/// Ultrafilter limit of the sequence: the k-th value for Principal(k), the
/// declared tail limit for every non-principal ultrafilter.
Rat value_limit(const ValueSequence& values, const UltrafilterSpec& d);

struct Claim3Report {
  ValueInterval product_value;              // sigma on the ultraproduct
  std::vector<ValueInterval> factor_values; // sigma on prefix members, then the tail/family
  Rat limit;                                // ultrafilter limit of the factor values
  bool all_exact = true;
  bool equal = false;
};

/// Compares sigma evaluated on the ultraproduct with the ultrafilter limit
/// of its values on the factors.  Requires every evaluation to be exact;
/// otherwise all_exact is false and no verdict is issued.
Claim3Report check_claim3(const StructureSequence& seq, const UltrafilterSpec& d, const FormulaPtr& sigma,
                          const EvalConfig& cfg);

}  // namespace metrilog

#endif
