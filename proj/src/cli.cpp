#include "metrilog/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "metrilog/corpus.hpp"
#include "metrilog/io.hpp"
#include "metrilog/json_io.hpp"
#include "metrilog/printer.hpp"
#include "metrilog/ultraproduct.hpp"

namespace metrilog::cli {

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitUsage = 3;

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::yes:
      return kExitYes;
    case Verdict::no:
      return kExitNo;
    case Verdict::unknown:
      return kExitUnknown;
  }
  return kExitUnknown;
}

std::string interval_text(const ValueInterval& v) {
  return "lo=" + v.lo.str() + " hi=" + v.hi.str() + " exact=" + (v.exact() ? "true" : "false");
}

Signature signature_from(const std::string& path) {
  std::string ext = std::filesystem::path(path).extension().string();
  if (ext == ".mstr") return load_structure(path).sig();
  return load_signature(path);
}

Assignment parse_assignment(const std::string& text, const MetricStructure& m) {
  Assignment a;
  if (text.empty()) return a;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    size_t eq = item.find('=');
    if (eq == std::string::npos) throw MetrilogError("bad assignment entry '" + item + "' (want var=point)");
    std::string var = item.substr(0, eq);
    std::string point = item.substr(eq + 1);
    if (var.empty() || point.empty()) throw MetrilogError("bad assignment entry '" + item + "'");
    int id = m.point_id(point);
    if (id < 0) throw MetrilogError("unknown point '" + point + "' in assignment");
    if (a.count(var)) throw MetrilogError("variable '" + var + "' assigned twice");
    a[var] = id;
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return a;
}

std::vector<int> parse_tuple(const std::string& text, const MetricStructure& m) {
  std::vector<int> tuple;
  size_t pos = 0;
  if (text.empty()) return tuple;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    std::string name = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    int id = m.point_id(name);
    if (id < 0) throw MetrilogError("unknown point '" + name + "' in tuple");
    tuple.push_back(id);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return tuple;
}

// Splits on commas that are not nested inside parentheses or brackets.
std::vector<std::string> split_top_level(const std::string& text) {
  std::vector<std::string> parts;
  std::string current;
  int depth = 0;
  for (char c : text) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(current);
      current.clear();
      continue;
    }
    current += c;
  }
  parts.push_back(current);
  return parts;
}

UltrafilterSpec parse_ultra(const std::string& text) {
  if (text == "frechet") return UltrafilterSpec::frechet();
  if (text.rfind("principal:", 0) == 0) {
    std::string num = text.substr(10);
    if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos) {
      throw MetrilogError("bad ultrafilter index in '" + text + "'");
    }
    return UltrafilterSpec::principal(std::stoll(num));
  }
  throw MetrilogError("bad ultrafilter spec '" + text + "' (want frechet or principal:K)");
}

/// Registry interpreted as a structure sequence: a finite family for
/// principal ultrafilters, prefix-plus-final-tail for the Fréchet limit.
StructureSequence registry_sequence(Registry reg, const UltrafilterSpec& d) {
  if (d.kind == UltrafilterSpec::Kind::frechet_limit) {
    MetricStructure tail = reg.structures.back();
    reg.structures.pop_back();
    return StructureSequence::omega(std::move(reg.structures), std::move(tail));
  }
  return StructureSequence::finite_family(std::move(reg.structures));
}

struct CommonOpts {
  int depth = 16;
  bool json = false;
};

void add_depth(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--depth", opts.depth, "schema truncation depth (instances 0..N-1)")
      ->envname("METRILOG_DEPTH")
      ->check(CLI::PositiveNumber);
}

void add_json(CLI::App* cmd, CommonOpts& opts) { cmd->add_flag("--json", opts.json, "machine-readable output"); }

struct PoolOpts {
  std::vector<std::string> vars;
  std::vector<std::string> formulas;
  std::vector<std::string> term_tuples;
  std::vector<std::string> thresholds;
  std::string strict_sat = "eq1";
};

void add_pool(CLI::App* cmd, PoolOpts& pool) {
  cmd->add_option("--pool-var", pool.vars, "pool variable (ordered, repeatable)");
  cmd->add_option("--pool-formula", pool.formulas, "candidate witness formula (repeatable)")->required();
  cmd->add_option("--pool-terms", pool.term_tuples, "comma-separated term tuple (repeatable)")->required();
  cmd->add_option("--r", pool.thresholds, "threshold in (0,1) (repeatable)")->required();
  cmd->add_option("--strict-sat", pool.strict_sat, "satisfiability reading: eq1 (value = 1) or gt0 (value > 0)")
      ->check(CLI::IsMember({"eq1", "gt0"}));
}

WitnessPool build_pool(const PoolOpts& opts, const Signature& sig) {
  WitnessPool pool;
  for (const auto& text : opts.formulas) pool.formulas.push_back(parse_formula(text, sig, "<pool-formula>"));
  for (const auto& tuple_text : opts.term_tuples) {
    std::vector<Term> tuple;
    for (const auto& part : split_top_level(tuple_text)) tuple.push_back(parse_term(part, sig, "<pool-terms>"));
    pool.term_tuples.push_back(std::move(tuple));
  }
  for (const auto& r : opts.thresholds) pool.thresholds.push_back(parse_rational(r));
  if (!opts.vars.empty()) {
    pool.variables = opts.vars;
  } else {
    std::set<std::string> vars;
    for (const auto& f : pool.formulas) {
      std::set<std::string> fv = free_variables(f);
      vars.insert(fv.begin(), fv.end());
    }
    for (const auto& tuple : pool.term_tuples) {
      for (const auto& t : tuple) {
        std::set<std::string> tv = term_variables(t);
        vars.insert(tv.begin(), tv.end());
      }
    }
    pool.variables.assign(vars.begin(), vars.end());
  }
  return pool;
}

SatStrictness strictness_of(const PoolOpts& opts) {
  return opts.strict_sat == "gt0" ? SatStrictness::value_positive : SatStrictness::value_one;
}

void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"metrilog: exact evaluation for [0,1]-valued infinitary logic on finite metric structures"};
  app.require_subcommand(1);

  // parse
  std::string parse_file, parse_sig;
  CommonOpts parse_opts;
  CLI::App* cmd_parse = app.add_subcommand("parse", "parse a document and print its canonical form");
  cmd_parse->add_option("file", parse_file, "input document")->required();
  cmd_parse->add_option("--sig", parse_sig, "signature context (.msig or .mstr) for formula-bearing documents");
  add_json(cmd_parse, parse_opts);

  // validate
  std::string validate_file;
  CommonOpts validate_opts;
  CLI::App* cmd_validate = app.add_subcommand("validate", "check metric axioms and moduli of a structure");
  cmd_validate->add_option("structure", validate_file, ".mstr file")->required();
  add_json(cmd_validate, validate_opts);

  // eval
  std::string eval_structure, eval_formula, eval_assignment;
  CommonOpts eval_opts;
  CLI::App* cmd_eval = app.add_subcommand("eval", "evaluate a formula on a structure");
  cmd_eval->add_option("structure", eval_structure, ".mstr file")->required();
  cmd_eval->add_option("formula", eval_formula, ".mfla file")->required();
  cmd_eval->add_option("--assignment", eval_assignment, "free-variable assignment, e.g. x=a,y=b");
  add_depth(cmd_eval, eval_opts);
  add_json(cmd_eval, eval_opts);

  // sat
  std::string sat_structure, sat_formula;
  CommonOpts sat_opts;
  CLI::App* cmd_sat = app.add_subcommand("sat", "is a closed formula satisfied (value exactly 1)?");
  cmd_sat->add_option("structure", sat_structure, ".mstr file")->required();
  cmd_sat->add_option("formula", sat_formula, ".mfla file")->required();
  add_depth(cmd_sat, sat_opts);
  add_json(cmd_sat, sat_opts);

  // models
  std::string models_structure, models_theory;
  CommonOpts models_opts;
  CLI::App* cmd_models = app.add_subcommand("models", "does a structure model a theory?");
  cmd_models->add_option("structure", models_structure, ".mstr file")->required();
  cmd_models->add_option("theory", models_theory, ".mthy file")->required();
  add_depth(cmd_models, models_opts);
  add_json(cmd_models, models_opts);

  // mod-interval
  std::string mi_registry, mi_formula, mi_r, mi_s;
  CommonOpts mi_opts;
  CLI::App* cmd_mi = app.add_subcommand("mod-interval", "partition a registry by the value of a sentence in [r,s]");
  cmd_mi->add_option("registry", mi_registry, ".mreg file")->required();
  cmd_mi->add_option("formula", mi_formula, ".mfla file")->required();
  cmd_mi->add_option("r", mi_r, "lower bound")->required();
  cmd_mi->add_option("s", mi_s, "upper bound")->required();
  add_depth(cmd_mi, mi_opts);
  add_json(cmd_mi, mi_opts);

  // compare
  std::string cmp_left, cmp_right, cmp_pool;
  CommonOpts cmp_opts;
  CLI::App* cmd_cmp = app.add_subcommand("compare", "compare two structures over a sentence pool");
  cmd_cmp->add_option("left", cmp_left, ".mstr file")->required();
  cmd_cmp->add_option("right", cmp_right, ".mstr file")->required();
  cmd_cmp->add_option("pool", cmp_pool, ".mthy file with the sentence pool")->required();
  add_depth(cmd_cmp, cmp_opts);
  add_json(cmd_cmp, cmp_opts);

  // ultraproduct
  std::string up_registry, up_ultra = "frechet", up_out;
  CommonOpts up_opts;
  CLI::App* cmd_up = app.add_subcommand("ultraproduct", "build a computable ultraproduct of a registry");
  cmd_up->add_option("registry", up_registry, ".mreg file")->required();
  cmd_up->add_option("--ultra", up_ultra, "frechet | principal:K");
  cmd_up->add_option("-o,--out", up_out, "write the product structure to this .mstr file");
  add_json(cmd_up, up_opts);

  // claim3
  std::string c3_registry, c3_formula, c3_ultra = "frechet";
  CommonOpts c3_opts;
  CLI::App* cmd_c3 = app.add_subcommand("claim3", "compare a sentence on the ultraproduct with its value limit");
  cmd_c3->add_option("registry", c3_registry, ".mreg file")->required();
  cmd_c3->add_option("formula", c3_formula, ".mfla file")->required();
  cmd_c3->add_option("--ultra", c3_ultra, "frechet | principal:K");
  add_depth(cmd_c3, c3_opts);
  add_json(cmd_c3, c3_opts);

  // realizes
  std::string re_structure, re_type, re_tuple;
  CommonOpts re_opts;
  CLI::App* cmd_re = app.add_subcommand("realizes", "does a tuple realize a partial type?");
  cmd_re->add_option("structure", re_structure, ".mstr file")->required();
  cmd_re->add_option("type", re_type, ".mtyp file")->required();
  cmd_re->add_option("--tuple", re_tuple, "comma-separated points, one per type variable")->required();
  add_depth(cmd_re, re_opts);
  add_json(cmd_re, re_opts);

  // omits
  std::string om_structure, om_type;
  CommonOpts om_opts;
  CLI::App* cmd_om = app.add_subcommand("omits", "does a structure omit a partial type?");
  cmd_om->add_option("structure", om_structure, ".mstr file")->required();
  cmd_om->add_option("type", om_type, ".mtyp file")->required();
  add_depth(cmd_om, om_opts);
  add_json(cmd_om, om_opts);

  // thicken
  std::string th_type, th_delta, th_sig, th_out;
  CommonOpts th_opts;
  CLI::App* cmd_th = app.add_subcommand("thicken", "print the delta-thickening of a partial type");
  cmd_th->add_option("type", th_type, ".mtyp file")->required();
  cmd_th->add_option("delta", th_delta, "radius in (0,1)")->required();
  cmd_th->add_option("--sig", th_sig, "signature context (.msig or .mstr)")->required();
  cmd_th->add_option("-o,--out", th_out, "write the thickened type to this .mtyp file");
  add_json(cmd_th, th_opts);

  // principal
  std::string pr_theory, pr_type, pr_registry;
  PoolOpts pr_pool;
  CommonOpts pr_opts;
  CLI::App* cmd_pr = app.add_subcommand("principal", "is a type principal over a theory, relative to a registry?");
  cmd_pr->add_option("theory", pr_theory, ".mthy file")->required();
  cmd_pr->add_option("type", pr_type, ".mtyp file")->required();
  cmd_pr->add_option("--registry", pr_registry, ".mreg file")->required();
  add_pool(cmd_pr, pr_pool);
  add_depth(cmd_pr, pr_opts);
  add_json(cmd_pr, pr_opts);

  // metrically-principal
  std::string mp_theory, mp_type, mp_registry;
  std::vector<std::string> mp_deltas;
  PoolOpts mp_pool;
  CommonOpts mp_opts;
  CLI::App* cmd_mp =
      app.add_subcommand("metrically-principal", "is every delta-thickening on the grid principal?");
  cmd_mp->add_option("theory", mp_theory, ".mthy file")->required();
  cmd_mp->add_option("type", mp_type, ".mtyp file")->required();
  cmd_mp->add_option("--registry", mp_registry, ".mreg file")->required();
  cmd_mp->add_option("--delta", mp_deltas, "thickening radius in (0,1) (repeatable)");
  add_pool(cmd_mp, mp_pool);
  add_depth(cmd_mp, mp_opts);
  add_json(cmd_mp, mp_opts);

  // omit-search
  std::string os_theory, os_registry;
  std::vector<std::string> os_types;
  CommonOpts os_opts;
  CLI::App* cmd_os = app.add_subcommand("omit-search", "find a registry model of T omitting every listed type");
  cmd_os->add_option("theory", os_theory, ".mthy file")->required();
  cmd_os->add_option("--types", os_types, ".mtyp files (repeatable)");
  cmd_os->add_option("--registry", os_registry, ".mreg file")->required();
  add_depth(cmd_os, os_opts);
  add_json(cmd_os, os_opts);

  // corpus
  CommonOpts corpus_opts;
  CLI::App* cmd_corpus = app.add_subcommand("corpus", "parse-check the bundled axiom corpus");
  add_depth(cmd_corpus, corpus_opts);
  add_json(cmd_corpus, corpus_opts);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::stringstream buffer;
    int code = app.exit(e, buffer, buffer);
    if (code == 0) {
      out << buffer.str();
      return kExitYes;  // --help
    }
    err << buffer.str();
    return kExitUsage;
  }

  try {
    if (*cmd_parse) {
      std::filesystem::path path(parse_file);
      std::string ext = path.extension().string();
      std::string text = read_file(parse_file);
      if (ext == ".msig") {
        Signature sig = parse_signature(text, parse_file);
        if (parse_opts.json) {
          print_json(out, Json{{"kind", "signature"}, {"canonical", print_signature(sig)}});
        } else {
          out << print_signature(sig);
        }
      } else if (ext == ".mstr") {
        MetricStructure m = parse_structure(text, parse_file);
        if (parse_opts.json) {
          print_json(out, Json{{"kind", "structure"}, {"canonical", print_structure(m)}});
        } else {
          out << print_structure(m);
        }
      } else if (ext == ".mreg") {
        RegistryFile reg = parse_registry_file(text, parse_file);
        if (parse_opts.json) {
          print_json(out, Json{{"kind", "registry"}, {"paths", reg.paths}});
        } else {
          out << print_registry(reg);
        }
      } else if (ext == ".mfla" || ext == ".mthy" || ext == ".mtyp") {
        if (parse_sig.empty()) {
          err << "error: '" << ext << "' documents need --sig\n";
          return kExitUsage;
        }
        Signature sig = signature_from(parse_sig);
        if (ext == ".mfla") {
          FormulaPtr f = parse_formula(text, sig, parse_file);
          if (parse_opts.json) {
            print_json(out, Json{{"kind", "formula"}, {"canonical", print_formula(f)}, {"ast", formula_ast_json(f)}});
          } else {
            out << print_formula(f) << "\n";
          }
        } else if (ext == ".mthy") {
          Theory t = parse_theory(text, sig, parse_file);
          if (parse_opts.json) {
            Json sentences = Json::array();
            for (const auto& s : t.sentences) sentences.push_back(formula_ast_json(s));
            print_json(out, Json{{"kind", "theory"}, {"name", t.name}, {"canonical", print_theory(t)},
                                 {"sentences", sentences}});
          } else {
            out << print_theory(t);
          }
        } else {
          PartialType ty = parse_type(text, sig, parse_file);
          if (parse_opts.json) {
            Json members = Json::array();
            for (const auto& f : ty.formulas) members.push_back(formula_ast_json(f));
            print_json(out, Json{{"kind", "type"}, {"name", ty.name}, {"canonical", print_type(ty)},
                                 {"members", members}});
          } else {
            out << print_type(ty);
          }
        }
      } else {
        err << "error: unknown document extension '" << ext << "'\n";
        return kExitUsage;
      }
      return kExitYes;
    }

    if (*cmd_validate) {
      MetricStructure m = load_structure(validate_file);
      MetricReport metric = validate_metric(m);
      std::vector<ModulusReport> moduli;
      for (const auto& f : m.sig().functions()) moduli.push_back(check_modulus(m, f.name));
      for (const auto& p : m.sig().predicates()) moduli.push_back(check_modulus(m, p.name));
      bool ok = metric.ok();
      for (const auto& r : moduli) ok &= r.ok();
      if (validate_opts.json) {
        Json jmod = Json::array();
        for (const auto& r : moduli) jmod.push_back(to_json(m, r));
        print_json(out, Json{{"ok", ok}, {"metric", to_json(m, metric)}, {"moduli", jmod}});
      } else {
        out << "metric: " << (metric.ok() ? "ok" : std::to_string(metric.violations.size()) + " violation(s)")
            << "\n";
        for (const auto& v : metric.violations) out << "  " << v.detail << "\n";
        for (const auto& w : metric.warnings) out << "  warning: " << w << "\n";
        for (const auto& r : moduli) {
          out << "modulus " << r.symbol << ": "
              << (r.ok() ? "ok" : std::to_string(r.counterexamples.size()) + " counterexample(s)") << "\n";
          for (const auto& ce : r.counterexamples) {
            out << "  tuples (";
            for (size_t i = 0; i < ce.tuple_a.size(); ++i) out << (i ? " " : "") << m.point_name(ce.tuple_a[i]);
            out << ") (";
            for (size_t i = 0; i < ce.tuple_b.size(); ++i) out << (i ? " " : "") << m.point_name(ce.tuple_b[i]);
            out << ") eps=" << ce.eps.str() << " delta=" << ce.delta_at_eps.str() << " input_sup="
                << ce.input_sup.str() << " output=" << ce.output_dist.str() << "\n";
          }
        }
      }
      return ok ? kExitYes : kExitNo;
    }

    if (*cmd_eval) {
      MetricStructure m = load_structure(eval_structure);
      FormulaPtr f = load_formula(eval_formula, m.sig());
      Assignment a = parse_assignment(eval_assignment, m);
      ValueInterval v = evaluate(m, f, a, {eval_opts.depth});
      if (eval_opts.json) {
        print_json(out, to_json(v));
      } else {
        out << interval_text(v) << "\n";
      }
      return v.exact() ? kExitYes : kExitUnknown;
    }

    if (*cmd_sat) {
      MetricStructure m = load_structure(sat_structure);
      FormulaPtr f = load_formula(sat_formula, m.sig());
      ValueInterval v = evaluate(m, f, {}, {sat_opts.depth});
      Verdict verdict = satisfies(m, f, {sat_opts.depth});
      if (sat_opts.json) {
        print_json(out, Json{{"verdict", to_json(verdict)}, {"value", to_json(v)}});
      } else {
        out << verdict_name(verdict) << " " << interval_text(v) << "\n";
      }
      return verdict_exit(verdict);
    }

    if (*cmd_models) {
      MetricStructure m = load_structure(models_structure);
      Theory t = load_theory(models_theory, m.sig());
      ModelsReport report = models(m, t, {models_opts.depth});
      if (models_opts.json) {
        print_json(out, to_json(report));
      } else {
        for (size_t i = 0; i < report.sentences.size(); ++i) {
          const auto& s = report.sentences[i];
          out << i << ": " << verdict_name(s.verdict) << " " << interval_text(s.value) << "  "
              << print_formula(s.sentence) << "\n";
        }
        out << verdict_name(report.verdict) << "\n";
      }
      return verdict_exit(report.verdict);
    }

    if (*cmd_mi) {
      Registry reg = load_registry(mi_registry);
      FormulaPtr f = load_formula(mi_formula, reg.structures.front().sig());
      ModIntervalReport report = mod_interval(reg, f, parse_rational(mi_r), parse_rational(mi_s), {mi_opts.depth});
      if (mi_opts.json) {
        print_json(out, to_json(report));
      } else {
        for (size_t i = 0; i < report.values.size(); ++i) {
          std::string where = "unknown";
          for (int idx : report.inside) {
            if (idx == static_cast<int>(i)) where = "inside";
          }
          for (int idx : report.outside) {
            if (idx == static_cast<int>(i)) where = "outside";
          }
          out << i << ": " << where << " " << interval_text(report.values[i]) << "\n";
        }
        out << "inside=" << report.inside.size() << " outside=" << report.outside.size()
            << " unknown=" << report.unknown.size() << "\n";
      }
      return report.unknown.empty() ? kExitYes : kExitUnknown;
    }

    if (*cmd_cmp) {
      MetricStructure left = load_structure(cmp_left);
      MetricStructure right = load_structure(cmp_right);
      Theory pool = load_theory(cmp_pool, left.sig());
      CompareReport report = compare_structures(left, right, pool.sentences, {cmp_opts.depth});
      if (cmp_opts.json) {
        print_json(out, to_json(report));
      } else {
        for (size_t i = 0; i < report.entries.size(); ++i) {
          const auto& e = report.entries[i];
          out << i << ": " << verdict_name(e.same) << " left[" << interval_text(e.left) << "] right["
              << interval_text(e.right) << "]  " << print_formula(e.sentence) << "\n";
        }
        out << verdict_name(report.verdict) << "\n";
      }
      return verdict_exit(report.verdict);
    }

    if (*cmd_up) {
      UltrafilterSpec d = parse_ultra(up_ultra);
      StructureSequence seq = registry_sequence(load_registry(up_registry), d);
      UltraproductResult result = ultraproduct(seq, d);
      const MetricStructure& source =
          result.source_index < 0 ? seq.tail() : seq.at(result.source_index);
      if (up_opts.json) {
        Json witness = Json::array();
        for (int p = 0; p < source.point_count(); ++p) {
          witness.push_back(Json{{"from", source.point_name(p)},
                                 {"to", result.structure.point_name(result.witness[static_cast<size_t>(p)])}});
        }
        print_json(out, Json{{"structure", print_structure(result.structure)},
                             {"source_index", result.source_index},
                             {"collapsed", result.collapsed},
                             {"witness", witness}});
      } else {
        out << print_structure(result.structure);
        for (int p = 0; p < source.point_count(); ++p) {
          out << "# witness " << source.point_name(p) << " -> "
              << result.structure.point_name(result.witness[static_cast<size_t>(p)]) << "\n";
        }
      }
      if (!up_out.empty()) write_file(up_out, print_structure(result.structure));
      return kExitYes;
    }

    if (*cmd_c3) {
      UltrafilterSpec d = parse_ultra(c3_ultra);
      Registry reg = load_registry(c3_registry);
      FormulaPtr f = load_formula(c3_formula, reg.structures.front().sig());
      StructureSequence seq = registry_sequence(std::move(reg), d);
      Claim3Report report = check_claim3(seq, d, f, {c3_opts.depth});
      if (c3_opts.json) {
        print_json(out, to_json(report));
      } else {
        out << "product " << interval_text(report.product_value) << "\n";
        out << "limit " << report.limit.str() << "\n";
        out << (report.all_exact ? (report.equal ? "equal" : "unequal") : "inexact") << "\n";
      }
      if (!report.all_exact) return kExitUnknown;
      return report.equal ? kExitYes : kExitNo;
    }

    if (*cmd_re) {
      MetricStructure m = load_structure(re_structure);
      PartialType type = load_type(re_type, m.sig());
      std::vector<int> tuple = parse_tuple(re_tuple, m);
      RealizeReport report = realizes(m, type, tuple, {re_opts.depth});
      if (re_opts.json) {
        print_json(out, to_json(m, report));
      } else {
        for (const auto& member : report.members) {
          out << verdict_name(member.verdict) << " " << interval_text(member.value) << "  "
              << print_formula(member.sentence) << "\n";
        }
        out << verdict_name(report.verdict) << "\n";
      }
      return verdict_exit(report.verdict);
    }

    if (*cmd_om) {
      MetricStructure m = load_structure(om_structure);
      PartialType type = load_type(om_type, m.sig());
      OmitsReport report = omits(m, type, {om_opts.depth});
      if (om_opts.json) {
        print_json(out, to_json(m, report));
      } else {
        out << verdict_name(report.verdict);
        if (report.realizing_tuple) {
          out << " realized at (";
          for (size_t i = 0; i < report.realizing_tuple->size(); ++i) {
            out << (i ? " " : "") << m.point_name((*report.realizing_tuple)[i]);
          }
          out << ")";
        }
        if (report.undecided_tuple) {
          out << " undecided at (";
          for (size_t i = 0; i < report.undecided_tuple->size(); ++i) {
            out << (i ? " " : "") << m.point_name((*report.undecided_tuple)[i]);
          }
          out << ")";
        }
        out << "\n";
      }
      return verdict_exit(report.verdict);
    }

    if (*cmd_th) {
      Signature sig = signature_from(th_sig);
      PartialType type = load_type(th_type, sig);
      PartialType thick = thicken(type, parse_rational(th_delta));
      std::string text = print_type(thick);
      if (th_opts.json) {
        Json members = Json::array();
        for (const auto& f : thick.formulas) members.push_back(print_formula(f));
        print_json(out, Json{{"name", thick.name}, {"vars", thick.variables}, {"members", members},
                             {"canonical", text}});
      } else {
        out << text;
      }
      if (!th_out.empty()) write_file(th_out, text);
      return kExitYes;
    }

    auto run_principal = [&](const std::string& theory_path, const std::string& type_path,
                             const std::string& registry_path, const PoolOpts& pool_opts, const CommonOpts& opts,
                             const std::vector<std::string>* deltas) {
      Registry reg = load_registry(registry_path);
      const Signature& sig = reg.structures.front().sig();
      Theory t = load_theory(theory_path, sig);
      PartialType type = load_type(type_path, sig);
      WitnessPool pool = build_pool(pool_opts, sig);
      EvalConfig cfg{opts.depth};
      if (!deltas) {
        PrincipalityReport report = principal_over(t, type, pool, reg, cfg, strictness_of(pool_opts));
        if (opts.json) {
          print_json(out, to_json(reg, pool, report));
        } else {
          if (report.verdict == Verdict::yes) {
            const TripleTrace& w = *report.witness;
            out << "Principal formula=" << print_formula(pool.formulas[w.formula_index]) << " terms=(";
            for (size_t i = 0; i < pool.term_tuples[w.terms_index].size(); ++i) {
              out << (i ? ", " : "") << print_term(pool.term_tuples[w.terms_index][i]);
            }
            out << ") r=" << pool.thresholds[w.threshold_index].str() << "\n";
          } else {
            out << (report.verdict == Verdict::no ? "NotPrincipal" : "Unknown") << " relative to the pool\n";
            for (const auto& trace : report.traces) {
              out << "  triple (" << trace.formula_index << "," << trace.terms_index << "," << trace.threshold_index
                  << "): " << verdict_name(trace.verdict);
              if (!trace.note.empty()) out << " -- " << trace.note;
              if (trace.counterexample) {
                const MetricStructure& cm = reg.structures[static_cast<size_t>(trace.counterexample->structure)];
                out << " at structure " << trace.counterexample->structure << " tuple (";
                for (size_t i = 0; i < trace.counterexample->tuple.size(); ++i) {
                  out << (i ? " " : "") << cm.point_name(trace.counterexample->tuple[i]);
                }
                out << ")";
              }
              out << "\n";
            }
          }
          if (report.vacuous) out << "note: " << report.note << "\n";
        }
        return verdict_exit(report.verdict);
      }
      std::vector<Rat> grid;
      for (const auto& text : *deltas) grid.push_back(parse_rational(text));
      MetricPrincipalityReport report = metrically_principal_over(t, type, pool, reg, grid, cfg,
                                                                  strictness_of(pool_opts));
      if (opts.json) {
        print_json(out, to_json(reg, pool, report));
      } else {
        for (size_t i = 0; i < report.per_delta.size(); ++i) {
          out << "delta=" << report.deltas[i].str() << ": " << verdict_name(report.per_delta[i].verdict) << "\n";
        }
        if (report.vacuous_grid) out << "note: empty delta grid, vacuously Yes\n";
        out << (report.verdict == Verdict::yes
                    ? "MetricallyPrincipal"
                    : (report.verdict == Verdict::no ? "NotMetricallyPrincipal" : "Unknown"))
            << " relative to the pool and grid\n";
      }
      return verdict_exit(report.verdict);
    };

    if (*cmd_pr) return run_principal(pr_theory, pr_type, pr_registry, pr_pool, pr_opts, nullptr);
    if (*cmd_mp) return run_principal(mp_theory, mp_type, mp_registry, mp_pool, mp_opts, &mp_deltas);

    if (*cmd_os) {
      Registry reg = load_registry(os_registry);
      const Signature& sig = reg.structures.front().sig();
      Theory t = load_theory(os_theory, sig);
      std::vector<PartialType> types;
      for (const auto& path : os_types) types.push_back(load_type(path, sig));
      OmitSearchReport report = omit_search(t, types, reg, {os_opts.depth});
      if (os_opts.json) {
        print_json(out, to_json(reg, report));
      } else {
        for (const auto& row : report.rows) {
          out << row.structure << ": models=" << verdict_name(row.models_verdict);
          for (size_t i = 0; i < row.omits_verdicts.size(); ++i) {
            out << " omits[" << i << "]=" << verdict_name(row.omits_verdicts[i]);
          }
          if (row.realized) {
            const MetricStructure& m = reg.structures[static_cast<size_t>(row.structure)];
            out << " realizes type " << row.realized->first << " at (";
            for (size_t i = 0; i < row.realized->second.size(); ++i) {
              out << (i ? " " : "") << m.point_name(row.realized->second[i]);
            }
            out << ")";
          }
          out << "\n";
        }
        if (report.found) {
          out << "found structure " << *report.found << "\n";
        } else {
          out << "exhausted\n";
        }
      }
      if (report.found) return kExitYes;
      bool any_unknown = false;
      for (const auto& row : report.rows) {
        any_unknown |= row.models_verdict == Verdict::unknown;
        for (Verdict v : row.omits_verdicts) any_unknown |= v == Verdict::unknown;
      }
      return any_unknown ? kExitUnknown : kExitNo;
    }

    if (*cmd_corpus) {
      bool all_ok = true;
      Json jentries = Json::array();
      for (const CorpusEntry& entry : corpus_entries()) {
        Signature sig = parse_signature(entry.signature_text, entry.name + ".msig");
        FormulaPtr f = parse_formula(entry.formula_text, sig, entry.name + ".mfla");
        std::string printed = print_formula(f);
        FormulaPtr reparsed = parse_formula(printed, sig, entry.name + ".mfla");
        bool roundtrip = equal(f, reparsed) && print_formula(reparsed) == printed;
        all_ok &= roundtrip;
        Json j{{"name", entry.name}, {"description", entry.description}, {"roundtrip", roundtrip},
               {"canonical", printed}};
        if (!entry.structure_text.empty()) {
          MetricStructure m = parse_structure(entry.structure_text, entry.name + ".mstr");
          ValueInterval v = evaluate(m, f, {}, {corpus_opts.depth});
          j["value"] = to_json(v);
          if (!corpus_opts.json) {
            out << entry.name << ": " << (roundtrip ? "ok" : "ROUNDTRIP FAILED") << " value " << interval_text(v)
                << "\n";
          }
        } else if (!corpus_opts.json) {
          out << entry.name << ": " << (roundtrip ? "ok" : "ROUNDTRIP FAILED") << "\n";
        }
        jentries.push_back(std::move(j));
      }
      if (corpus_opts.json) print_json(out, Json{{"ok", all_ok}, {"entries", jentries}});
      return all_ok ? kExitYes : kExitNo;
    }

    err << "error: no subcommand\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const MetrilogError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace metrilog::cli
