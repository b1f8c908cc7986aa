#include "metrilog/ultraproduct.hpp"

namespace metrilog {

StructureSequence StructureSequence::finite_family(std::vector<MetricStructure> family) {
  if (family.empty()) throw MetrilogError("a structure sequence needs at least one member");
  StructureSequence s;
  s.members_ = std::move(family);
  for (const auto& m : s.members_) {
    if (m.sig() != s.members_[0].sig()) throw MetrilogError("sequence members must share one signature");
  }
  return s;
}

StructureSequence StructureSequence::omega(std::vector<MetricStructure> prefix, MetricStructure tail) {
  StructureSequence s;
  s.members_ = std::move(prefix);
  s.tail_ = std::move(tail);
  for (const auto& m : s.members_) {
    if (m.sig() != s.tail_->sig()) throw MetrilogError("sequence members must share one signature");
  }
  return s;
}

const MetricStructure& StructureSequence::tail() const {
  if (!tail_) throw MetrilogError("finite family has no tail");
  return *tail_;
}

const MetricStructure& StructureSequence::at(std::int64_t k) const {
  if (k < 0) throw MetrilogError("negative sequence index");
  if (k < static_cast<std::int64_t>(members_.size())) return members_[static_cast<size_t>(k)];
  if (tail_) return *tail_;
  throw MetrilogError("index " + std::to_string(k) + " out of range for a family of " +
                      std::to_string(members_.size()));
}

const Signature& StructureSequence::sig() const { return tail_ ? tail_->sig() : members_.front().sig(); }

UltraproductResult ultraproduct(const StructureSequence& seq, const UltrafilterSpec& d) {
  const MetricStructure* source = nullptr;
  std::int64_t source_index = 0;
  if (d.kind == UltrafilterSpec::Kind::principal) {
    source = &seq.at(d.index);
    source_index = seq.is_omega() && d.index >= static_cast<std::int64_t>(seq.prefix().size()) ? -1 : d.index;
  } else {
    if (!seq.is_omega()) {
      throw NotComputableError(
          "not computable: a non-principal ultraproduct needs an eventually-constant omega-sequence");
    }
    // Every non-principal ultrafilter concentrates on the cofinite tail, so
    // the product of an eventually-constant sequence collapses to the tail
    // member (points are classified by their eventual value).
    source = &seq.tail();
    source_index = -1;
  }
  QuotientResult q = quotient_zero_distance(*source);
  return UltraproductResult{std::move(q.structure), source_index, std::move(q.point_map), q.collapsed};
}

ValueSequence ValueSequence::constant(const Rat& value) {
  return ValueSequence{{}, RationalSeqExpr::fixed(value)};
}

ValueSequence ValueSequence::with_prefix(std::vector<Rat> prefix, RationalSeqExpr tail) {
  if (tail.kind == RationalSeqExpr::Kind::enumeration) {
    throw MetrilogError("a value sequence tail must converge (constant or affine)");
  }
  for (const Rat& v : prefix) rat01(v);
  return ValueSequence{std::move(prefix), std::move(tail)};
}

Rat ValueSequence::at(std::int64_t n) const {
  if (n < 0) throw MetrilogError("negative value index");
  if (n < static_cast<std::int64_t>(prefix.size())) return prefix[static_cast<size_t>(n)];
  return tail.value_at(n);
}

Rat value_limit(const ValueSequence& values, const UltrafilterSpec& d) {
  if (d.kind == UltrafilterSpec::Kind::principal) return values.at(d.index);
  return values.tail.limit();
}

Claim3Report check_claim3(const StructureSequence& seq, const UltrafilterSpec& d, const FormulaPtr& sigma,
                          const EvalConfig& cfg) {
  if (!is_closed(sigma)) throw EvalError("claim3 needs a closed sentence");
  Claim3Report report;

  UltraproductResult up = ultraproduct(seq, d);
  report.product_value = evaluate(up.structure, sigma, {}, cfg);
  report.all_exact = report.product_value.exact();

  std::vector<Rat> prefix_values;
  for (const auto& m : seq.prefix()) {
    ValueInterval v = evaluate(m, sigma, {}, cfg);
    report.factor_values.push_back(v);
    report.all_exact &= v.exact();
    prefix_values.push_back(v.lo);
  }
  Rat tail_value(0, 1);
  if (seq.is_omega()) {
    ValueInterval v = evaluate(seq.tail(), sigma, {}, cfg);
    report.factor_values.push_back(v);
    report.all_exact &= v.exact();
    tail_value = v.lo;
  }
  if (!report.all_exact) return report;

  if (seq.is_omega()) {
    ValueSequence values = ValueSequence::with_prefix(std::move(prefix_values), RationalSeqExpr::fixed(tail_value));
    report.limit = value_limit(values, d);
  } else {
    if (d.kind != UltrafilterSpec::Kind::principal) {
      throw NotComputableError("not computable: a non-principal limit needs an omega-sequence");
    }
    report.limit = prefix_values.at(static_cast<size_t>(d.index));
  }
  report.equal = report.product_value.lo == report.limit;
  return report;
}

}  // namespace metrilog
