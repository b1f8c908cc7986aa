#include "metrilog/json_io.hpp"

#include "metrilog/printer.hpp"

namespace metrilog {

std::vector<std::string> tuple_names(const MetricStructure& m, const std::vector<int>& tuple) {
  std::vector<std::string> out;
  out.reserve(tuple.size());
  for (int p : tuple) out.push_back(m.point_name(p));
  return out;
}

Json to_json(const Rat& r) { return r.str(); }

Json to_json(const ValueInterval& v) {
  return Json{{"lo", v.lo.str()}, {"hi", v.hi.str()}, {"exact", v.exact()}};
}

Json to_json(Verdict v) { return verdict_name(v); }

Json to_json(const Term& t) { return print_term(t); }

Json formula_ast_json(const FormulaPtr& f) {
  switch (f->kind()) {
    case Formula::Kind::atomic_dist:
      return Json{{"node", "dist"}, {"t1", print_term(f->terms()[0])}, {"t2", print_term(f->terms()[1])}};
    case Formula::Kind::atomic_pred: {
      Json args = Json::array();
      for (const Term& t : f->terms()) args.push_back(print_term(t));
      return Json{{"node", "pred"}, {"name", f->name()}, {"args", args}};
    }
    case Formula::Kind::rational_const:
      return Json{{"node", "const"}, {"value", f->value().str()}};
    case Formula::Kind::indexed_rational:
      return Json{{"node", "indexed_const"}, {"expr", print_formula(f)}};
    case Formula::Kind::implies:
      return Json{{"node", "implies"}, {"left", formula_ast_json(f->left())}, {"right", formula_ast_json(f->right())}};
    case Formula::Kind::sup_var:
      return Json{{"node", "sup_var"}, {"var", f->name()}, {"body", formula_ast_json(f->body())}};
    case Formula::Kind::sup_seq: {
      if (f->schema_is_list()) {
        Json members = Json::array();
        for (const FormulaPtr& c : f->children()) members.push_back(formula_ast_json(c));
        return Json{{"node", "sup_list"}, {"members", members}};
      }
      return Json{{"node", "sup_seq"}, {"index", f->name()}, {"body", formula_ast_json(f->body())}};
    }
  }
  throw MetrilogError("unreachable formula kind");
}

namespace {
const char* axiom_name(MetricAxiom a) {
  switch (a) {
    case MetricAxiom::reflexivity:
      return "reflexivity";
    case MetricAxiom::symmetry:
      return "symmetry";
    case MetricAxiom::triangle:
      return "triangle";
    case MetricAxiom::bound:
      return "bound";
  }
  return "unknown";
}
}  // namespace

Json to_json(const MetricStructure& m, const MetricViolation& v) {
  return Json{{"axiom", axiom_name(v.axiom)}, {"points", tuple_names(m, v.points)}, {"detail", v.detail}};
}

Json to_json(const MetricStructure& m, const MetricReport& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations) violations.push_back(to_json(m, v));
  return Json{{"ok", r.ok()}, {"violations", violations}, {"warnings", r.warnings}};
}

Json to_json(const MetricStructure& m, const ModulusReport& r) {
  Json counterexamples = Json::array();
  for (const auto& ce : r.counterexamples) {
    counterexamples.push_back(Json{{"tuple_a", tuple_names(m, ce.tuple_a)},
                                   {"tuple_b", tuple_names(m, ce.tuple_b)},
                                   {"eps", ce.eps.str()},
                                   {"delta_at_eps", ce.delta_at_eps.str()},
                                   {"input_sup", ce.input_sup.str()},
                                   {"output_dist", ce.output_dist.str()}});
  }
  return Json{{"symbol", r.symbol}, {"ok", r.ok()}, {"counterexamples", counterexamples}};
}

Json to_json(const ModelsReport& r) {
  Json sentences = Json::array();
  for (const auto& s : r.sentences) {
    sentences.push_back(
        Json{{"sentence", print_formula(s.sentence)}, {"value", to_json(s.value)}, {"verdict", to_json(s.verdict)}});
  }
  return Json{{"verdict", to_json(r.verdict)}, {"sentences", sentences}};
}

Json to_json(const ModIntervalReport& r) {
  Json values = Json::array();
  for (const auto& v : r.values) values.push_back(to_json(v));
  return Json{{"r", r.lo.str()},      {"s", r.hi.str()},        {"inside", r.inside},
              {"outside", r.outside}, {"unknown", r.unknown},   {"values", values}};
}

Json to_json(const CompareReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    entries.push_back(Json{{"sentence", print_formula(e.sentence)},
                           {"left", to_json(e.left)},
                           {"right", to_json(e.right)},
                           {"verdict", to_json(e.same)}});
  }
  return Json{{"verdict", to_json(r.verdict)}, {"sentences", entries}};
}

Json to_json(const MetricStructure& m, const RealizeReport& r) {
  (void)m;
  Json members = Json::array();
  for (const auto& s : r.members) {
    members.push_back(
        Json{{"formula", print_formula(s.sentence)}, {"value", to_json(s.value)}, {"verdict", to_json(s.verdict)}});
  }
  return Json{{"verdict", to_json(r.verdict)}, {"members", members}};
}

Json to_json(const MetricStructure& m, const OmitsReport& r) {
  Json out{{"verdict", to_json(r.verdict)}};
  if (r.realizing_tuple) out["realizing_tuple"] = tuple_names(m, *r.realizing_tuple);
  if (r.undecided_tuple) out["undecided_tuple"] = tuple_names(m, *r.undecided_tuple);
  return out;
}

namespace {

Json pair_witness_json(const Registry& reg, const PairWitness& w) {
  return Json{{"structure", w.structure},
              {"tuple", tuple_names(reg.structures.at(static_cast<size_t>(w.structure)), w.tuple)},
              {"phi_value", to_json(w.phi_value)},
              {"realizes", to_json(w.realize_verdict)}};
}

Json triple_trace_json(const Registry& reg, const WitnessPool& pool, const TripleTrace& t) {
  Json out{{"formula", print_formula(pool.formulas.at(t.formula_index))},
           {"terms", Json::array()},
           {"threshold", pool.thresholds.at(t.threshold_index).str()},
           {"verdict", to_json(t.verdict)}};
  for (const Term& term : pool.term_tuples.at(t.terms_index)) out["terms"].push_back(print_term(term));
  if (t.sat_witness) out["sat_witness"] = pair_witness_json(reg, *t.sat_witness);
  if (t.counterexample) out["counterexample"] = pair_witness_json(reg, *t.counterexample);
  if (!t.note.empty()) out["note"] = t.note;
  return out;
}

}  // namespace

Json to_json(const Registry& reg, const WitnessPool& pool, const PrincipalityReport& r) {
  Json traces = Json::array();
  for (const auto& t : r.traces) traces.push_back(triple_trace_json(reg, pool, t));
  Json out{{"verdict", to_json(r.verdict)}, {"vacuous", r.vacuous}, {"traces", traces}};
  if (r.witness) out["witness"] = triple_trace_json(reg, pool, *r.witness);
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

Json to_json(const Registry& reg, const WitnessPool& pool, const MetricPrincipalityReport& r) {
  Json per_delta = Json::array();
  for (size_t i = 0; i < r.per_delta.size(); ++i) {
    per_delta.push_back(Json{{"delta", r.deltas[i].str()}, {"report", to_json(reg, pool, r.per_delta[i])}});
  }
  return Json{{"verdict", to_json(r.verdict)}, {"vacuous_grid", r.vacuous_grid}, {"per_delta", per_delta}};
}

Json to_json(const Registry& reg, const OmitSearchReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json omits = Json::array();
    for (Verdict v : row.omits_verdicts) omits.push_back(to_json(v));
    Json jrow{{"structure", row.structure}, {"models", to_json(row.models_verdict)}, {"omits", omits}};
    if (row.realized) {
      jrow["realized_type"] = row.realized->first;
      jrow["realizing_tuple"] = tuple_names(reg.structures.at(static_cast<size_t>(row.structure)), row.realized->second);
    }
    rows.push_back(jrow);
  }
  Json out{{"rows", rows}};
  if (r.found) {
    out["found"] = *r.found;
  } else {
    out["found"] = nullptr;
  }
  return out;
}

Json to_json(const Claim3Report& r) {
  Json factors = Json::array();
  for (const auto& v : r.factor_values) factors.push_back(to_json(v));
  return Json{{"product_value", to_json(r.product_value)},
              {"factor_values", factors},
              {"limit", r.limit.str()},
              {"all_exact", r.all_exact},
              {"equal", r.equal}};
}

}  // namespace metrilog
