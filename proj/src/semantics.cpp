#include "metrilog/semantics.hpp"

#include <algorithm>

namespace metrilog {

namespace {
const Rat kZero(0, 1);
const Rat kOne(1, 1);
}  // namespace

ValueInterval::ValueInterval(Rat lo_, Rat hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (!(lo <= hi)) throw MetrilogError("value interval with lo > hi");
  if (!lo.in_unit_interval() || !hi.in_unit_interval()) {
    throw MetrilogError("value interval escapes [0, 1]; the structure is not a valid metric structure");
  }
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::yes:
      return "Yes";
    case Verdict::no:
      return "No";
    case Verdict::unknown:
      return "Unknown";
  }
  return "Unknown";
}

void Registry::check_common_signature() const {
  for (size_t i = 1; i < structures.size(); ++i) {
    if (structures[i].sig() != structures[0].sig()) {
      throw MetrilogError("registry structures must share one signature");
    }
  }
}

int evaluate_term(const MetricStructure& m, const Term& t, const Assignment& a) {
  switch (t.kind) {
    case Term::Kind::variable: {
      auto it = a.find(t.name);
      if (it == a.end()) throw EvalError("unbound variable '" + t.name + "'");
      return it->second;
    }
    case Term::Kind::constant:
      return m.constant_point(t.name);
    case Term::Kind::indexed_constant:
      return m.family(t.name).at(t.index.value());
    case Term::Kind::apply: {
      std::vector<int> args;
      args.reserve(t.args.size());
      for (const Term& arg : t.args) args.push_back(evaluate_term(m, arg, a));
      return m.apply_function(t.name, args);
    }
  }
  throw MetrilogError("unreachable term kind");
}

namespace {

/// One evaluation pass.  Results are cached per (node, assignment restricted
/// to the node's free variables); the cache is pure value memoization and
/// cannot change results.
class Evaluator {
 public:
  Evaluator(const MetricStructure& m, const EvalConfig& cfg) : m_(m), cfg_(cfg) {
    if (cfg_.truncation_depth < 1) throw MetrilogError("truncation depth must be >= 1");
  }

  ValueInterval eval(const FormulaPtr& f, const Assignment& a) {
    MemoKey key = make_key(f, a);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    ValueInterval result = eval_raw(f, a);
    memo_.emplace(std::move(key), result);
    return result;
  }

 private:
  using Restriction = std::vector<std::pair<std::string, int>>;
  using MemoKey = std::pair<const Formula*, Restriction>;

  MemoKey make_key(const FormulaPtr& f, const Assignment& a) {
    const std::set<std::string>& fv = free_vars(f);
    Restriction r;
    r.reserve(fv.size());
    for (const std::string& v : fv) {
      auto it = a.find(v);
      if (it == a.end()) throw EvalError("unbound variable '" + v + "'");
      r.emplace_back(v, it->second);
    }
    return {f.get(), std::move(r)};
  }

  const std::set<std::string>& free_vars(const FormulaPtr& f) {
    auto it = free_vars_.find(f.get());
    if (it == free_vars_.end()) it = free_vars_.emplace(f.get(), free_variables(f)).first;
    return it->second;
  }

  ValueInterval eval_raw(const FormulaPtr& f, const Assignment& a) {
    switch (f->kind()) {
      case Formula::Kind::atomic_dist: {
        int p = evaluate_term(m_, f->terms()[0], a);
        int q = evaluate_term(m_, f->terms()[1], a);
        return ValueInterval::point(m_.distance(p, q));
      }
      case Formula::Kind::atomic_pred: {
        std::vector<int> args;
        args.reserve(f->terms().size());
        for (const Term& t : f->terms()) args.push_back(evaluate_term(m_, t, a));
        return ValueInterval::point(m_.predicate_value(f->name(), args));
      }
      case Formula::Kind::rational_const:
        return ValueInterval::point(f->value());
      case Formula::Kind::indexed_rational:
        throw EvalError("unresolved schema index in formula");
      case Formula::Kind::implies: {
        ValueInterval left = eval(f->left(), a);
        ValueInterval right = eval(f->right(), a);
        Rat lo = Rat::min(kOne - left.hi + right.lo, kOne);
        Rat hi = Rat::min(kOne - left.lo + right.hi, kOne);
        return ValueInterval(lo, hi);
      }
      case Formula::Kind::sup_var: {
        Assignment inner = a;
        std::optional<ValueInterval> best;
        for (int p = 0; p < m_.point_count(); ++p) {
          inner[f->name()] = p;
          ValueInterval v = eval(f->body(), inner);
          if (!best) {
            best = v;
          } else {
            best = ValueInterval(Rat::max(best->lo, v.lo), Rat::max(best->hi, v.hi));
          }
        }
        return *best;
      }
      case Formula::Kind::sup_seq: {
        if (f->schema_is_list()) {
          std::optional<ValueInterval> best;
          for (const FormulaPtr& member : f->children()) {
            ValueInterval v = eval(member, a);
            if (!best) {
              best = v;
            } else {
              best = ValueInterval(Rat::max(best->lo, v.lo), Rat::max(best->hi, v.hi));
            }
          }
          return *best;
        }
        // ω-schema: sample the first truncation_depth instances.  The lower
        // bound is the best instance lo; no finite sample bounds the tail
        // from above, so hi stays 1 unless an instance already attains 1.
        Rat lo = kZero;
        for (int i = 0; i < cfg_.truncation_depth; ++i) {
          ValueInterval v = eval(instance(f, i), a);
          lo = Rat::max(lo, v.lo);
          if (lo == kOne) return ValueInterval::point(kOne);
        }
        return ValueInterval(lo, kOne);
      }
    }
    throw MetrilogError("unreachable formula kind");
  }

  FormulaPtr instance(const FormulaPtr& schema, int i) {
    auto key = std::make_pair(schema.get(), i);
    auto it = instances_.find(key);
    if (it == instances_.end()) it = instances_.emplace(key, instantiate(schema, i)).first;
    return it->second;
  }

  const MetricStructure& m_;
  const EvalConfig& cfg_;
  std::map<MemoKey, ValueInterval> memo_;
  std::map<const Formula*, std::set<std::string>> free_vars_;
  std::map<std::pair<const Formula*, int>, FormulaPtr> instances_;
};

}  // namespace

ValueInterval evaluate(const MetricStructure& m, const FormulaPtr& f, const Assignment& a, const EvalConfig& cfg) {
  Evaluator ev(m, cfg);
  return ev.eval(f, a);
}

Verdict satisfies(const MetricStructure& m, const FormulaPtr& sentence, const EvalConfig& cfg) {
  if (!is_closed(sentence)) throw EvalError("satisfaction needs a closed formula");
  ValueInterval v = evaluate(m, sentence, {}, cfg);
  if (v.lo == kOne) return Verdict::yes;
  if (v.hi < kOne) return Verdict::no;
  return Verdict::unknown;
}

ModelsReport models(const MetricStructure& m, const Theory& t, const EvalConfig& cfg) {
  ModelsReport report;
  bool any_no = false;
  bool any_unknown = false;
  for (const FormulaPtr& sentence : t.sentences) {
    if (!is_closed(sentence)) throw EvalError("theory sentence with free variables");
    ValueInterval v = evaluate(m, sentence, {}, cfg);
    Verdict verdict = v.lo == kOne ? Verdict::yes : (v.hi < kOne ? Verdict::no : Verdict::unknown);
    any_no |= verdict == Verdict::no;
    any_unknown |= verdict == Verdict::unknown;
    report.sentences.push_back({sentence, v, verdict});
  }
  report.verdict = any_no ? Verdict::no : (any_unknown ? Verdict::unknown : Verdict::yes);
  return report;
}

ModIntervalReport mod_interval(const Registry& reg, const FormulaPtr& sigma, const Rat& r, const Rat& s,
                               const EvalConfig& cfg) {
  if (!(r <= s)) throw MetrilogError("mod_interval needs r <= s");
  rat01(r);
  rat01(s);
  reg.check_common_signature();
  ModIntervalReport report;
  report.lo = r;
  report.hi = s;
  for (size_t i = 0; i < reg.structures.size(); ++i) {
    ValueInterval v = evaluate(reg.structures[i], sigma, {}, cfg);
    report.values.push_back(v);
    if (r <= v.lo && v.hi <= s) {
      report.inside.push_back(static_cast<int>(i));
    } else if (v.hi < r || s < v.lo) {
      report.outside.push_back(static_cast<int>(i));
    } else {
      report.unknown.push_back(static_cast<int>(i));
    }
  }
  return report;
}

CompareReport compare_structures(const MetricStructure& m, const MetricStructure& n,
                                 const std::vector<FormulaPtr>& pool, const EvalConfig& cfg) {
  if (m.sig() != n.sig()) throw MetrilogError("compared structures must share one signature");
  CompareReport report;
  bool any_no = false;
  bool any_unknown = false;
  for (const FormulaPtr& sentence : pool) {
    ValueInterval left = evaluate(m, sentence, {}, cfg);
    ValueInterval right = evaluate(n, sentence, {}, cfg);
    Verdict same;
    if (left.exact() && right.exact()) {
      same = left.lo == right.lo ? Verdict::yes : Verdict::no;
    } else if (left.hi < right.lo || right.hi < left.lo) {
      same = Verdict::no;  // disjoint enclosures differ for sure
    } else {
      same = Verdict::unknown;
    }
    any_no |= same == Verdict::no;
    any_unknown |= same == Verdict::unknown;
    report.entries.push_back({sentence, left, right, same});
  }
  report.verdict = any_no ? Verdict::no : (any_unknown ? Verdict::unknown : Verdict::yes);
  return report;
}

}  // namespace metrilog
