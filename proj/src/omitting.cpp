#include "metrilog/omitting.hpp"

#include <algorithm>

namespace metrilog {

namespace {
const Rat kZero(0, 1);
const Rat kOne(1, 1);

Verdict interval_verdict(const ValueInterval& v) {
  if (v.lo == kOne) return Verdict::yes;
  if (v.hi < kOne) return Verdict::no;
  return Verdict::unknown;
}
}  // namespace

void PartialType::check_well_formed() const {
  for (size_t i = 0; i < variables.size(); ++i) {
    for (size_t j = i + 1; j < variables.size(); ++j) {
      if (variables[i] == variables[j]) throw MetrilogError("duplicate type variable '" + variables[i] + "'");
    }
  }
  for (const FormulaPtr& f : formulas) {
    for (const auto& v : free_variables(f)) {
      if (std::find(variables.begin(), variables.end(), v) == variables.end()) {
        throw MetrilogError("type member mentions undeclared variable '" + v + "'");
      }
    }
  }
}

RealizeReport realizes(const MetricStructure& m, const PartialType& type, const std::vector<int>& tuple,
                       const EvalConfig& cfg) {
  if (tuple.size() != type.variables.size()) throw EvalError("tuple arity does not match the type's variables");
  Assignment a;
  for (size_t i = 0; i < tuple.size(); ++i) a[type.variables[i]] = tuple[i];

  RealizeReport report;
  bool any_no = false;
  bool any_unknown = false;
  for (const FormulaPtr& f : type.formulas) {
    ValueInterval v = evaluate(m, f, a, cfg);
    Verdict verdict = interval_verdict(v);
    any_no |= verdict == Verdict::no;
    any_unknown |= verdict == Verdict::unknown;
    report.members.push_back({f, v, verdict});
  }
  report.verdict = any_no ? Verdict::no : (any_unknown ? Verdict::unknown : Verdict::yes);
  return report;
}

OmitsReport omits(const MetricStructure& m, const PartialType& type, const EvalConfig& cfg) {
  OmitsReport report;
  const int arity = static_cast<int>(type.variables.size());
  const size_t count = m.tuple_count(arity);
  bool any_unknown = false;
  std::vector<int> first_unknown;
  for (size_t t = 0; t < count; ++t) {
    std::vector<int> tuple = m.tuple_at(t, arity);
    Verdict v = realizes(m, type, tuple, cfg).verdict;
    if (v == Verdict::yes) {
      report.verdict = Verdict::no;
      report.realizing_tuple = tuple;
      return report;
    }
    if (v == Verdict::unknown && !any_unknown) {
      any_unknown = true;
      first_unknown = tuple;
    }
  }
  if (any_unknown) {
    report.verdict = Verdict::unknown;
    report.undecided_tuple = first_unknown;
  } else {
    report.verdict = Verdict::yes;
  }
  return report;
}

PartialType thicken(const PartialType& type, const Rat& delta) {
  if (!(delta > kZero) || !(delta < kOne)) throw MetrilogError("thickening radius must lie in (0, 1)");
  type.check_well_formed();
  PartialType out;
  out.name = type.name + "_thick";
  out.variables = type.variables;
  if (type.variables.empty()) {
    out.formulas = type.formulas;  // sentences are unchanged up to vacuous quantification
    return out;
  }

  // Fresh bound variables y_k, one per type variable.
  std::set<std::string> avoid(type.variables.begin(), type.variables.end());
  for (const FormulaPtr& f : type.formulas) {
    std::set<std::string> fv = free_variables(f);
    avoid.insert(fv.begin(), fv.end());
  }
  std::vector<std::string> fresh;
  for (const auto& x : type.variables) {
    std::string y = x + "'";
    while (avoid.count(y)) y += "'";
    avoid.insert(y);
    fresh.push_back(y);
  }

  for (const FormulaPtr& f : type.formulas) {
    FormulaPtr shifted = f;
    for (size_t k = 0; k < type.variables.size(); ++k) {
      shifted = substitute(shifted, type.variables[k], Term::variable(fresh[k]));
    }
    FormulaPtr guard;
    for (size_t k = 0; k < type.variables.size(); ++k) {
      FormulaPtr close = leq(Formula::dist(Term::variable(type.variables[k]), Term::variable(fresh[k])), delta);
      guard = guard ? land(std::move(guard), std::move(close)) : std::move(close);
    }
    FormulaPtr body = land(std::move(guard), std::move(shifted));
    for (size_t k = type.variables.size(); k-- > 0;) {
      body = Formula::sup_var(fresh[k], std::move(body));
    }
    out.formulas.push_back(std::move(body));
  }
  return out;
}

std::vector<PartialType> apply_term_tuples(const PartialType& type, const std::vector<std::string>& new_variables,
                                           const std::vector<std::vector<Term>>& term_tuples) {
  type.check_well_formed();
  std::vector<PartialType> out;
  for (size_t index = 0; index < term_tuples.size(); ++index) {
    const std::vector<Term>& terms = term_tuples[index];
    if (terms.size() != type.variables.size()) {
      throw MetrilogError("term tuple arity does not match the type's variables");
    }
    PartialType instance;
    instance.name = type.name + "_t" + std::to_string(index);
    instance.variables = new_variables;
    for (const FormulaPtr& f : type.formulas) {
      // Simultaneous substitution via fresh intermediate variables, so that
      // terms mentioning the original variables are not rewritten twice.
      std::set<std::string> avoid = free_variables(f);
      for (const auto& t : terms) {
        std::set<std::string> tv = term_variables(t);
        avoid.insert(tv.begin(), tv.end());
      }
      avoid.insert(type.variables.begin(), type.variables.end());
      avoid.insert(new_variables.begin(), new_variables.end());
      std::vector<std::string> stage;
      FormulaPtr g = f;
      for (const auto& x : type.variables) {
        std::string tmp = x + "_s";
        while (avoid.count(tmp)) tmp += "'";
        avoid.insert(tmp);
        stage.push_back(tmp);
        g = substitute(g, x, Term::variable(tmp));
      }
      for (size_t k = 0; k < stage.size(); ++k) {
        g = substitute(g, stage[k], terms[k]);
      }
      instance.formulas.push_back(std::move(g));
    }
    instance.check_well_formed();
    out.push_back(std::move(instance));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Principality

namespace {

struct PoolContext {
  const Theory& theory;
  const PartialType& type;
  const WitnessPool& pool;
  const Registry& registry;
  const EvalConfig& cfg;
  SatStrictness strictness;
  std::vector<Verdict> model_verdicts;
};

bool sat_definite(const ValueInterval& v, SatStrictness s) {
  return s == SatStrictness::value_one ? v.lo == kOne : v.lo > kZero;
}

bool sat_possible(const ValueInterval& v, SatStrictness s) {
  return s == SatStrictness::value_one ? v.hi == kOne : v.hi > kZero;
}

TripleTrace check_triple(PoolContext& ctx, size_t fi, size_t ti, size_t ri) {
  TripleTrace trace;
  trace.formula_index = fi;
  trace.terms_index = ti;
  trace.threshold_index = ri;

  const FormulaPtr& phi = ctx.pool.formulas[fi];
  const std::vector<Term>& terms = ctx.pool.term_tuples[ti];
  const Rat& r = ctx.pool.thresholds[ri];
  const int arity = static_cast<int>(ctx.pool.variables.size());

  bool sat_found = false;
  bool sat_maybe = false;
  bool entail_unknown = false;
  std::optional<PairWitness> counterexample;
  std::optional<PairWitness> blocker;

  for (size_t si = 0; si < ctx.registry.structures.size(); ++si) {
    Verdict model = ctx.model_verdicts[si];
    if (model == Verdict::no) continue;
    const MetricStructure& m = ctx.registry.structures[si];
    const size_t count = m.tuple_count(arity);
    for (size_t t = 0; t < count; ++t) {
      std::vector<int> tuple = m.tuple_at(t, arity);
      Assignment a;
      for (size_t k = 0; k < ctx.pool.variables.size(); ++k) a[ctx.pool.variables[k]] = tuple[k];
      ValueInterval phi_value = evaluate(m, phi, a, ctx.cfg);

      if (model == Verdict::yes && !sat_found && sat_definite(phi_value, ctx.strictness)) {
        sat_found = true;
        trace.sat_witness = PairWitness{static_cast<int>(si), tuple, phi_value, Verdict::yes};
      }
      if (sat_possible(phi_value, ctx.strictness)) sat_maybe = true;

      if (phi_value.hi < r) continue;  // definitely below the threshold
      bool definitely_ge = phi_value.lo >= r;

      std::vector<int> image;
      image.reserve(terms.size());
      for (const Term& term : terms) image.push_back(evaluate_term(m, term, a));
      Verdict realized = realizes(m, ctx.type, image, ctx.cfg).verdict;
      if (realized == Verdict::yes) continue;

      if (model == Verdict::yes && definitely_ge && realized == Verdict::no) {
        if (!counterexample) {
          counterexample = PairWitness{static_cast<int>(si), tuple, phi_value, realized};
        }
      } else {
        entail_unknown = true;
        if (!blocker) blocker = PairWitness{static_cast<int>(si), tuple, phi_value, realized};
      }
    }
  }

  if (counterexample) {
    trace.verdict = Verdict::no;
    trace.counterexample = counterexample;
    trace.note = "entailment fails";
    return trace;
  }
  if (!sat_found) {
    if (sat_maybe) {
      trace.verdict = Verdict::unknown;
      trace.note = "no definite satisfiability witness";
      return trace;
    }
    trace.verdict = Verdict::no;
    trace.note = "witness formula unsatisfiable over the registry models";
    return trace;
  }
  if (entail_unknown) {
    trace.verdict = Verdict::unknown;
    trace.counterexample = blocker;
    trace.note = "entailment undecided under truncation";
    return trace;
  }
  trace.verdict = Verdict::yes;
  return trace;
}

}  // namespace

PrincipalityReport principal_over(const Theory& t, const PartialType& type, const WitnessPool& pool,
                                  const Registry& registry, const EvalConfig& cfg, SatStrictness strictness) {
  if (registry.structures.empty()) throw MetrilogError("principality needs a nonempty registry");
  registry.check_common_signature();
  type.check_well_formed();
  if (pool.formulas.empty() || pool.term_tuples.empty() || pool.thresholds.empty()) {
    throw MetrilogError("the witness pool needs formulas, term tuples and thresholds");
  }
  for (const auto& tuple : pool.term_tuples) {
    if (tuple.size() != type.variables.size()) {
      throw MetrilogError("pool term tuple arity does not match the type's variables");
    }
  }
  for (const Rat& r : pool.thresholds) {
    if (!(r > kZero) || !(r < kOne)) throw MetrilogError("thresholds must lie in (0, 1)");
  }
  for (const FormulaPtr& phi : pool.formulas) {
    for (const auto& v : free_variables(phi)) {
      if (std::find(pool.variables.begin(), pool.variables.end(), v) == pool.variables.end()) {
        throw MetrilogError("pool formula mentions undeclared pool variable '" + v + "'");
      }
    }
  }

  PoolContext ctx{t, type, pool, registry, cfg, strictness, {}};
  for (const auto& m : registry.structures) ctx.model_verdicts.push_back(models(m, t, cfg).verdict);

  // Is the type realized at all in a registry model?  Principality holding
  // only because nothing reaches the threshold is flagged as vacuous.
  bool realized_somewhere = false;
  bool realized_unknown = false;
  const int type_arity = static_cast<int>(type.variables.size());
  for (size_t si = 0; si < registry.structures.size() && !realized_somewhere; ++si) {
    if (ctx.model_verdicts[si] != Verdict::yes) continue;
    const MetricStructure& m = registry.structures[si];
    const size_t count = m.tuple_count(type_arity);
    for (size_t tu = 0; tu < count && !realized_somewhere; ++tu) {
      Verdict v = realizes(m, type, m.tuple_at(tu, type_arity), cfg).verdict;
      realized_somewhere |= v == Verdict::yes;
      realized_unknown |= v == Verdict::unknown;
    }
  }

  PrincipalityReport report;
  bool any_unknown = false;
  for (size_t fi = 0; fi < pool.formulas.size(); ++fi) {
    for (size_t ti = 0; ti < pool.term_tuples.size(); ++ti) {
      for (size_t ri = 0; ri < pool.thresholds.size(); ++ri) {
        TripleTrace trace = check_triple(ctx, fi, ti, ri);
        any_unknown |= trace.verdict == Verdict::unknown;
        report.traces.push_back(trace);
        if (trace.verdict == Verdict::yes && report.verdict != Verdict::yes) {
          report.verdict = Verdict::yes;
          report.witness = trace;
        }
      }
    }
  }
  if (report.verdict != Verdict::yes) report.verdict = any_unknown ? Verdict::unknown : Verdict::no;

  if (report.verdict == Verdict::yes && !realized_somewhere) {
    report.vacuous = true;
    report.note = realized_unknown
                      ? "vacuously principal -- no confirmed realization of the type in the registry models"
                      : "vacuously principal -- the type is not a type of the theory over this registry";
  }
  return report;
}

MetricPrincipalityReport metrically_principal_over(const Theory& t, const PartialType& type, const WitnessPool& pool,
                                                   const Registry& registry, const std::vector<Rat>& deltas,
                                                   const EvalConfig& cfg, SatStrictness strictness) {
  MetricPrincipalityReport report;
  report.deltas = deltas;
  if (deltas.empty()) {
    report.vacuous_grid = true;
    report.verdict = Verdict::yes;
    return report;
  }
  bool any_no = false;
  bool any_unknown = false;
  for (const Rat& delta : deltas) {
    PartialType thick = thicken(type, delta);
    PrincipalityReport r = principal_over(t, thick, pool, registry, cfg, strictness);
    any_no |= r.verdict == Verdict::no;
    any_unknown |= r.verdict == Verdict::unknown;
    report.per_delta.push_back(std::move(r));
  }
  report.verdict = any_no ? Verdict::no : (any_unknown ? Verdict::unknown : Verdict::yes);
  return report;
}

OmitSearchReport omit_search(const Theory& t, const std::vector<PartialType>& types, const Registry& registry,
                             const EvalConfig& cfg) {
  registry.check_common_signature();
  OmitSearchReport report;
  for (size_t si = 0; si < registry.structures.size(); ++si) {
    const MetricStructure& m = registry.structures[si];
    OmitSearchRow row;
    row.structure = static_cast<int>(si);
    row.models_verdict = models(m, t, cfg).verdict;
    bool all_yes = row.models_verdict == Verdict::yes;
    if (row.models_verdict != Verdict::no) {
      for (size_t ty = 0; ty < types.size(); ++ty) {
        OmitsReport o = omits(m, types[ty], cfg);
        row.omits_verdicts.push_back(o.verdict);
        if (o.verdict == Verdict::no && !row.realized) row.realized = {ty, *o.realizing_tuple};
        all_yes &= o.verdict == Verdict::yes;
      }
    }
    report.rows.push_back(row);
    if (all_yes) {
      report.found = static_cast<int>(si);
      return report;
    }
  }
  return report;
}

}  // namespace metrilog
