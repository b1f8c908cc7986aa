#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "metrilog/omitting.hpp"
#include "metrilog/parser.hpp"
#include "metrilog/printer.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace metrilog;
using namespace metrilog::testsupport;

namespace {

const EvalConfig kCfg{16};

Signature psig() {
  Signature sig;
  sig.add_predicate({"P", 1, Modulus::constant(Rat(1, 2))});
  return sig;
}

MetricStructure one_point(const Rat& p_value) {
  MetricStructure m(psig(), {"a"});
  m.set_predicate("P", {p_value});
  return m;
}

PartialType p_type() {
  PartialType type;
  type.name = "sigma";
  type.variables = {"x"};
  type.formulas = {Formula::pred("P", {Term::variable("x")})};
  return type;
}

/// All 1-point structures with P in {0, 1/2, 1}.
Registry grid_registry() {
  Registry reg;
  reg.structures.push_back(one_point(Rat(0, 1)));
  reg.structures.push_back(one_point(Rat(1, 2)));
  reg.structures.push_back(one_point(Rat(1, 1)));
  return reg;
}

WitnessPool pool_of(std::vector<FormulaPtr> formulas, const Rat& r) {
  WitnessPool pool;
  pool.variables = {"y"};
  pool.formulas = std::move(formulas);
  pool.term_tuples = {{Term::variable("y")}};
  pool.thresholds = {r};
  return pool;
}

}  // namespace

TEST_CASE("realizes: member-wise verdicts") {
  PartialType trivial;
  trivial.name = "top";
  trivial.variables = {"x"};
  trivial.formulas = {Formula::constant(Rat(1, 1))};
  MetricStructure m = one_point(Rat(1, 2));
  CHECK(realizes(m, trivial, {0}, kCfg).verdict == Verdict::yes);

  CHECK(realizes(one_point(Rat(1, 2)), p_type(), {0}, kCfg).verdict == Verdict::no);
  CHECK(realizes(one_point(Rat(1, 1)), p_type(), {0}, kCfg).verdict == Verdict::yes);
  CHECK_THROWS_AS(realizes(m, p_type(), {0, 0}, kCfg), EvalError);
}

TEST_CASE("omits scans every tuple") {
  Signature sig = psig();
  MetricStructure below(sig, {"a", "b"});
  below.set_distance(0, 1, Rat(1, 2));
  below.set_distance(1, 0, Rat(1, 2));
  below.set_predicate("P", {Rat(1, 2), Rat(3, 4)});
  CHECK(omits(below, p_type(), kCfg).verdict == Verdict::yes);

  MetricStructure hit(sig, {"a", "b"});
  hit.set_distance(0, 1, Rat(1, 2));
  hit.set_distance(1, 0, Rat(1, 2));
  hit.set_predicate("P", {Rat(1, 2), Rat(1, 1)});
  OmitsReport r = omits(hit, p_type(), kCfg);
  CHECK(r.verdict == Verdict::no);
  REQUIRE(r.realizing_tuple.has_value());
  CHECK(*r.realizing_tuple == std::vector<int>{1});

  // undecided tuple: at a the predicate member fails, at b the truncated
  // omega-schema member stays in [1/2, 1]
  Signature dsig;
  dsig.add_predicate({"P", 1, Modulus::constant(Rat(1, 2))});
  dsig.add_family("c");
  MetricStructure dense(dsig, {"a", "b"});
  dense.set_distance(0, 1, Rat(1, 2));
  dense.set_distance(1, 0, Rat(1, 2));
  dense.set_family("c", {{}, 0});
  dense.set_predicate("P", {Rat(1, 2), Rat(1, 1)});
  PartialType schema_type;
  schema_type.name = "s";
  schema_type.variables = {"x"};
  schema_type.formulas = {parse_formula("Vee i . ~d(x, c[i])", dsig, "t.mfla"),
                          parse_formula("P(x)", dsig, "t.mfla")};
  OmitsReport u = omits(dense, schema_type, EvalConfig{2});
  CHECK(u.verdict == Verdict::unknown);
  REQUIRE(u.undecided_tuple.has_value());
  CHECK(*u.undecided_tuple == std::vector<int>{1});
}

TEST_CASE("thicken produces the guarded sup form") {
  PartialType type = p_type();
  PartialType thick = thicken(type, Rat(1, 4));
  REQUIRE(thick.formulas.size() == 1);
  CHECK(thick.variables == type.variables);
  FormulaPtr expected = Formula::sup_var(
      "x'", land(leq(Formula::dist(Term::variable("x"), Term::variable("x'")), Rat(1, 4)),
                 Formula::pred("P", {Term::variable("x'")})));
  CHECK(equal(thick.formulas[0], expected));
  CHECK(print_formula(thick.formulas[0]) == "sup x' . (d(x, x') -> 1/4) /\\ P(x')");

  CHECK_THROWS_AS(thicken(type, Rat(0, 1)), MetrilogError);
  CHECK_THROWS_AS(thicken(type, Rat(1, 1)), MetrilogError);

  // sentences are unchanged
  PartialType sentences;
  sentences.name = "s";
  sentences.formulas = {Formula::constant(Rat(1, 2))};
  PartialType sthick = thicken(sentences, Rat(1, 4));
  CHECK(equal(sthick.formulas[0], sentences.formulas[0]));
}

TEST_CASE("thicken avoids capturing variables already present") {
  // a member that already mentions x': the fresh bound variable must differ
  Signature sig;
  sig.add_predicate({"R", 2, Modulus::constant(Rat(1, 2))});
  PartialType type;
  type.name = "t";
  type.variables = {"x", "x'"};
  type.formulas = {Formula::pred("R", {Term::variable("x"), Term::variable("x'")})};
  PartialType thick = thicken(type, Rat(1, 2));
  std::set<std::string> fv = free_variables(thick.formulas[0]);
  CHECK(fv == std::set<std::string>{"x", "x'"});
}

TEST_CASE("ball property of thickening, exhaustively on small structures") {
  Rng rng(140914);
  Signature sig = psig();
  std::vector<Rat> dist_grid = {Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1, 1)};
  std::vector<Rat> value_grid = {Rat(0, 1), Rat(1, 2), Rat(1, 1)};
  PartialType type = p_type();
  for (const Rat& delta : {Rat(1, 4), Rat(1, 2)}) {
    PartialType thick = thicken(type, delta);
    int checked = 0;
    for (int round = 0; round < 120; ++round) {
      int n = pick(rng, 1, 3);
      std::vector<std::string> names;
      for (int i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
      MetricStructure m(psig(), names);
      for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
          Rat d = choose(rng, dist_grid);
          m.set_distance(a, b, d);
          m.set_distance(b, a, d);
        }
      }
      if (!validate_metric(m).ok()) continue;
      std::vector<Rat> table;
      for (int i = 0; i < n; ++i) table.push_back(choose(rng, value_grid));
      m.set_predicate("P", table);
      for (int a = 0; a < n; ++a) {
        if (realizes(m, type, {a}, kCfg).verdict != Verdict::yes) continue;
        for (int b = 0; b < n; ++b) {
          if (product_metric(m, {a}, {b}) <= delta) {
            CHECK(realizes(m, thick, {b}, kCfg).verdict == Verdict::yes);
            ++checked;
          }
        }
      }
    }
    CHECK(checked > 0);
  }
}

TEST_CASE("monotonicity: a realizing tuple realizes every thickening") {
  Signature sig = psig();
  MetricStructure m(sig, {"a", "b"});
  m.set_distance(0, 1, Rat(3, 4));
  m.set_distance(1, 0, Rat(3, 4));
  m.set_predicate("P", {Rat(1, 1), Rat(0, 1)});
  PartialType type = p_type();
  REQUIRE(realizes(m, type, {0}, kCfg).verdict == Verdict::yes);
  for (const Rat& delta : {Rat(1, 8), Rat(1, 4), Rat(1, 2), Rat(7, 8)}) {
    CHECK(realizes(m, thicken(type, delta), {0}, kCfg).verdict == Verdict::yes);
  }
}

TEST_CASE("thickening twice implies the summed thickening at the Yes level") {
  Rng rng(260216);
  Signature sig = psig();
  std::vector<Rat> dist_grid = {Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1, 1)};
  std::vector<Rat> value_grid = {Rat(0, 1), Rat(1, 2), Rat(1, 1)};
  PartialType type = p_type();
  Rat d1(1, 4), d2(1, 4), dsum(1, 2);
  PartialType twice = thicken(thicken(type, d1), d2);
  PartialType summed = thicken(type, dsum);
  int hit = 0;
  for (int round = 0; round < 150; ++round) {
    int n = pick(rng, 1, 3);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
    MetricStructure m(psig(), names);
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        Rat d = choose(rng, dist_grid);
        m.set_distance(a, b, d);
        m.set_distance(b, a, d);
      }
    }
    if (!validate_metric(m).ok()) continue;
    std::vector<Rat> table;
    for (int i = 0; i < n; ++i) table.push_back(choose(rng, value_grid));
    m.set_predicate("P", table);
    for (int a = 0; a < n; ++a) {
      if (realizes(m, twice, {a}, kCfg).verdict == Verdict::yes) {
        CHECK(realizes(m, summed, {a}, kCfg).verdict == Verdict::yes);
        ++hit;
      }
    }
  }
  CHECK(hit > 0);
}

TEST_CASE("worked principality example: threshold 3/4 forces P = 1 on the grid") {
  Registry reg = grid_registry();
  Theory empty{"T", {}};
  PartialType type = p_type();

  WitnessPool good = pool_of({Formula::pred("P", {Term::variable("y")})}, Rat(3, 4));
  PrincipalityReport r = principal_over(empty, type, good, reg, kCfg);
  CHECK(r.verdict == Verdict::yes);
  CHECK_FALSE(r.vacuous);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->formula_index == 0);
  REQUIRE(r.witness->sat_witness.has_value());
  CHECK(r.witness->sat_witness->structure == 2);  // the P = 1 structure

  // constants-only pool: a constant formula admits every point of every
  // model, including the P = 0 structure
  WitnessPool constants = pool_of({Formula::constant(Rat(1, 1))}, Rat(3, 4));
  PrincipalityReport bad = principal_over(empty, type, constants, reg, kCfg);
  CHECK(bad.verdict == Verdict::no);
  REQUIRE(bad.traces.size() == 1);
  REQUIRE(bad.traces[0].counterexample.has_value());
  CHECK(bad.traces[0].counterexample->structure == 0);  // fails at P = 0
  CHECK(bad.traces[0].counterexample->realize_verdict == Verdict::no);

  // a constant below the threshold is unsatisfiable under the value-1 reading
  WitnessPool low = pool_of({Formula::constant(Rat(1, 2))}, Rat(3, 4));
  PrincipalityReport unsat = principal_over(empty, type, low, reg, kCfg);
  CHECK(unsat.verdict == Verdict::no);
  CHECK(unsat.traces[0].note.find("unsatisfiable") != std::string::npos);
}

TEST_CASE("strictness flag: value-1 versus positive-value satisfiability") {
  Registry reg = grid_registry();
  Theory empty{"T", {}};
  // an unrealizable type: P(x) and ~P(x) together
  PartialType contra;
  contra.name = "contra";
  contra.variables = {"x"};
  contra.formulas = {Formula::pred("P", {Term::variable("x")}), neg(Formula::pred("P", {Term::variable("x")}))};

  // phi = 1/2 never reaches the 3/4 threshold, so entailment is vacuous;
  // under gt0 it is satisfiable, which makes the triple succeed vacuously
  WitnessPool half = pool_of({Formula::constant(Rat(1, 2))}, Rat(3, 4));
  PrincipalityReport strict = principal_over(empty, contra, half, reg, kCfg, SatStrictness::value_one);
  CHECK(strict.verdict == Verdict::no);
  PrincipalityReport loose = principal_over(empty, contra, half, reg, kCfg, SatStrictness::value_positive);
  CHECK(loose.verdict == Verdict::yes);
  CHECK(loose.vacuous);
  CHECK(loose.note.find("not a type") != std::string::npos);
}

TEST_CASE("theories restrict the registry models") {
  Registry reg = grid_registry();
  // T: P(x) somewhere at least 3/4 -- only the P=1 structure satisfies it
  FormulaPtr axiom = parse_formula("sup x . P(x) >= 3/4", psig(), "t.mfla");
  Theory t{"T", {axiom}};
  PartialType type = p_type();
  WitnessPool constants = pool_of({Formula::constant(Rat(1, 1))}, Rat(3, 4));
  // with the P=0 and P=1/2 structures excluded, the constant pool entails
  PrincipalityReport r = principal_over(t, type, constants, reg, kCfg);
  CHECK(r.verdict == Verdict::yes);
}

TEST_CASE("principality agrees with the independent double-loop oracle") {
  Theory empty{"T", {}};
  PartialType type = p_type();
  std::vector<WitnessPool> pools = {
      pool_of({Formula::pred("P", {Term::variable("y")})}, Rat(3, 4)),
      pool_of({Formula::constant(Rat(1, 1))}, Rat(3, 4)),
      pool_of({Formula::pred("P", {Term::variable("y")})}, Rat(1, 4)),
      pool_of({geq(Formula::pred("P", {Term::variable("y")}), Rat(1, 2))}, Rat(3, 4)),
  };

  // exhaustive family of 1-point registries over the P grid {0, 1/2, 1}
  std::vector<Rat> grid = {Rat(0, 1), Rat(1, 2), Rat(1, 1)};
  for (int mask = 1; mask < 8; ++mask) {
    Registry reg;
    for (int bit = 0; bit < 3; ++bit) {
      if (mask & (1 << bit)) reg.structures.push_back(one_point(grid[static_cast<size_t>(bit)]));
    }
    for (const WitnessPool& pool : pools) {
      Verdict mine = principal_over(empty, type, pool, reg, kCfg).verdict;
      Verdict oracle = principal_oracle(empty, type, pool, reg, kCfg);
      CHECK(mine == oracle);
      CHECK(mine != Verdict::unknown);
    }
  }

  // randomized registries over 1..3-point structures
  Rng rng(50505);
  std::vector<Rat> values = {Rat(0, 1), Rat(1, 4), Rat(1, 2), Rat(3, 4), Rat(1, 1)};
  for (int round = 0; round < 80; ++round) {
    Registry reg;
    int count = pick(rng, 1, 3);
    for (int s = 0; s < count; ++s) {
      int n = pick(rng, 1, 3);
      std::vector<std::string> names;
      for (int i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
      MetricStructure m(psig(), names);
      for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
          Rat d = choose(rng, std::vector<Rat>{Rat(1, 2), Rat(3, 4), Rat(1, 1)});
          m.set_distance(a, b, d);
          m.set_distance(b, a, d);
        }
      }
      std::vector<Rat> table;
      for (int i = 0; i < n; ++i) table.push_back(choose(rng, values));
      m.set_predicate("P", table);
      reg.structures.push_back(std::move(m));
    }
    for (const WitnessPool& pool : pools) {
      Verdict mine = principal_over(empty, type, pool, reg, kCfg).verdict;
      Verdict oracle = principal_oracle(empty, type, pool, reg, kCfg);
      CHECK(mine == oracle);
    }
  }
}

TEST_CASE("zero-variable types behave like sentence sets") {
  PartialType sentences;
  sentences.name = "s";
  sentences.formulas = {geq(Formula::sup_var("x", Formula::pred("P", {Term::variable("x")})), Rat(3, 4))};
  // the empty tuple realizes the type exactly when the sentence holds
  CHECK(realizes(one_point(Rat(1, 1)), sentences, {}, kCfg).verdict == Verdict::yes);
  CHECK(realizes(one_point(Rat(1, 2)), sentences, {}, kCfg).verdict == Verdict::no);
  CHECK(omits(one_point(Rat(1, 1)), sentences, kCfg).verdict == Verdict::no);
  CHECK(omits(one_point(Rat(1, 2)), sentences, kCfg).verdict == Verdict::yes);
  // thickening a sentence set is the identity up to vacuous quantification
  PartialType thick = thicken(sentences, Rat(1, 4));
  REQUIRE(thick.formulas.size() == 1);
  CHECK(equal(thick.formulas[0], sentences.formulas[0]));
}

TEST_CASE("term tuples in the pool substitute into the type") {
  // Sigma = {P(x)}; terms f(y) with f the successor-like map; principality
  // via phi(y) = P(f(y))
  Signature sig;
  sig.add_predicate({"P", 1, Modulus::constant(Rat(1, 2))});
  sig.add_function({"f", 1, Modulus::constant(Rat(1, 2))});
  MetricStructure m(sig, {"a", "b"});
  m.set_distance(0, 1, Rat(1, 1));
  m.set_distance(1, 0, Rat(1, 1));
  m.set_predicate("P", {Rat(0, 1), Rat(1, 1)});
  m.set_function("f", {1, 1});  // everything maps to b, where P = 1
  Registry reg;
  reg.structures.push_back(m);
  Theory empty{"T", {}};
  PartialType type = p_type();
  WitnessPool pool;
  pool.variables = {"y"};
  pool.formulas = {Formula::pred("P", {Term::apply("f", {Term::variable("y")})})};
  pool.term_tuples = {{Term::apply("f", {Term::variable("y")})}};
  pool.thresholds = {Rat(1, 2)};
  PrincipalityReport r = principal_over(empty, type, pool, reg, kCfg);
  CHECK(r.verdict == Verdict::yes);

  // with the identity term tuple instead, entailment fails at the point a
  WitnessPool identity_pool = pool_of({Formula::pred("P", {Term::apply("f", {Term::variable("y")})})}, Rat(1, 2));
  PrincipalityReport bad = principal_over(empty, type, identity_pool, reg, kCfg);
  CHECK(bad.verdict == Verdict::no);
}

TEST_CASE("apply_term_tuples emits the substituted family") {
  Signature sig;
  sig.add_predicate({"R", 2, Modulus::constant(Rat(1, 2))});
  sig.add_function({"f", 1, Modulus::constant(Rat(1, 2))});
  PartialType type;
  type.name = "t";
  type.variables = {"x", "y"};
  type.formulas = {Formula::pred("R", {Term::variable("x"), Term::variable("y")})};
  // substitute (x, y) := (y, f(y)) over the new variable tuple (y)
  std::vector<PartialType> family =
      apply_term_tuples(type, {"y"}, {{Term::variable("y"), Term::apply("f", {Term::variable("y")})}});
  REQUIRE(family.size() == 1);
  CHECK(family[0].variables == std::vector<std::string>{"y"});
  CHECK(equal(family[0].formulas[0],
              Formula::pred("R", {Term::variable("y"), Term::apply("f", {Term::variable("y")})})));
  // swapping variables is simultaneous, not sequential
  std::vector<PartialType> swapped =
      apply_term_tuples(type, {"x", "y"}, {{Term::variable("y"), Term::variable("x")}});
  CHECK(equal(swapped[0].formulas[0], Formula::pred("R", {Term::variable("y"), Term::variable("x")})));
}

TEST_CASE("metric principality over a delta grid") {
  Registry reg = grid_registry();
  Theory empty{"T", {}};
  PartialType type = p_type();
  WitnessPool good = pool_of({Formula::pred("P", {Term::variable("y")})}, Rat(3, 4));

  MetricPrincipalityReport r =
      metrically_principal_over(empty, type, good, reg, {Rat(1, 8), Rat(1, 4)}, kCfg);
  CHECK(r.verdict == Verdict::yes);
  CHECK(r.per_delta.size() == 2);

  MetricPrincipalityReport vacuous = metrically_principal_over(empty, type, good, reg, {}, kCfg);
  CHECK(vacuous.verdict == Verdict::yes);
  CHECK(vacuous.vacuous_grid);

  // a two-point structure where the thickened type is entailed by nothing:
  // P(a)=1 and its delta-ball covers b, so thickening is realized at b too;
  // a pool threshold reachable at points omitting the thick type fails
  Signature sig = psig();
  MetricStructure m(sig, {"a", "b"});
  m.set_distance(0, 1, Rat(1, 4));
  m.set_distance(1, 0, Rat(1, 4));
  m.set_predicate("P", {Rat(1, 1), Rat(0, 1)});
  Registry reg2;
  reg2.structures.push_back(std::move(m));
  WitnessPool all = pool_of({Formula::constant(Rat(1, 1))}, Rat(3, 4));
  // delta = 1/8 < d(a,b): the thickened type is still omitted at b, and the
  // constant formula admits b, so principality fails at that delta
  MetricPrincipalityReport fails =
      metrically_principal_over(empty, type, all, reg2, {Rat(1, 8), Rat(1, 2)}, kCfg);
  CHECK(fails.verdict == Verdict::no);
  CHECK(fails.per_delta[0].verdict == Verdict::no);
  CHECK(fails.per_delta[1].verdict == Verdict::yes);  // delta = 1/2 >= d(a,b) covers b
}

TEST_CASE("omit search scans the registry in order") {
  Registry reg;
  reg.structures.push_back(one_point(Rat(1, 1)));  // realizes the type
  reg.structures.push_back(one_point(Rat(1, 2)));  // omits it
  reg.structures.push_back(one_point(Rat(0, 1)));  // also omits it, but later
  Theory empty{"T", {}};
  PartialType type = p_type();

  OmitSearchReport r = omit_search(empty, {type}, reg, kCfg);
  REQUIRE(r.found.has_value());
  CHECK(*r.found == 1);
  REQUIRE(r.rows.size() == 2);
  CHECK(r.rows[0].realized.has_value());
  CHECK(r.rows[0].realized->second == std::vector<int>{0});

  // re-running omits on the found structure confirms the evidence
  CHECK(omits(reg.structures[static_cast<size_t>(*r.found)], type, kCfg).verdict == Verdict::yes);

  // empty type list: the first model of T wins
  OmitSearchReport first = omit_search(empty, {}, reg, kCfg);
  REQUIRE(first.found.has_value());
  CHECK(*first.found == 0);

  // exhaustion: every structure realizes the type
  Registry all_realize;
  all_realize.structures.push_back(one_point(Rat(1, 1)));
  all_realize.structures.push_back(one_point(Rat(1, 1)));
  OmitSearchReport exhausted = omit_search(empty, {type}, all_realize, kCfg);
  CHECK_FALSE(exhausted.found.has_value());
  CHECK(exhausted.rows.size() == 2);
  for (const auto& row : exhausted.rows) {
    REQUIRE(row.realized.has_value());
    CHECK(row.realized->first == 0);
  }

  // structures that fail the theory are skipped with evidence
  FormulaPtr axiom = parse_formula("sup x . P(x) >= 3/4", psig(), "t.mfla");
  Theory t{"T", {axiom}};
  OmitSearchReport themed = omit_search(t, {type}, reg, kCfg);
  CHECK_FALSE(themed.found.has_value());  // only the P=1 structure models T, and it realizes the type
  CHECK(themed.rows[0].models_verdict == Verdict::yes);
  CHECK(themed.rows[1].models_verdict == Verdict::no);
  CHECK(themed.rows[2].models_verdict == Verdict::no);
}
