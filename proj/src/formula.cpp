#include "metrilog/formula.hpp"

#include <algorithm>
#include <map>

namespace metrilog {

namespace {
const Rat kZero(0, 1);
const Rat kOne(1, 1);
}  // namespace

// ---------------------------------------------------------------------------
// RationalSeqExpr

RationalSeqExpr RationalSeqExpr::fixed(const Rat& q) {
  RationalSeqExpr e;
  e.kind = Kind::fixed;
  e.fixed_value = rat01(q);
  return e;
}

RationalSeqExpr RationalSeqExpr::affine(Rat base, int sign, std::int64_t a, std::int64_t b, std::string var) {
  if (sign != 1 && sign != -1) throw MetrilogError("affine rational expression sign must be +1 or -1");
  if (a < 1 || b < 1) throw MetrilogError("affine rational expression needs a, b >= 1");
  if (var.empty()) throw MetrilogError("affine rational expression needs an index variable");
  RationalSeqExpr e;
  e.kind = Kind::affine;
  e.base = rat01(base);
  e.sign = sign;
  e.a = a;
  e.b = b;
  e.var = std::move(var);
  // Values move monotonically from the value at 0 toward the base, so the
  // endpoint check keeps every instance inside [0, 1].
  rat01(e.value_at(0));
  return e;
}

RationalSeqExpr RationalSeqExpr::enumeration(IndexExpr index) {
  RationalSeqExpr e;
  e.kind = Kind::enumeration;
  e.enum_index = std::move(index);
  return e;
}

Rat RationalSeqExpr::value_at(std::int64_t i) const {
  switch (kind) {
    case Kind::fixed:
      return fixed_value;
    case Kind::affine: {
      Rat step = Rat(a, 1) / Rat(i + b, 1);
      return sign > 0 ? base + step : base - step;
    }
    case Kind::enumeration:
      return enumerated_unit_rational(enum_index.resolved(enum_index.var, i).value());
  }
  throw MetrilogError("unreachable sequence expression kind");
}

Rat RationalSeqExpr::limit() const {
  switch (kind) {
    case Kind::fixed:
      return fixed_value;
    case Kind::affine:
      return base;
    case Kind::enumeration:
      throw NotComputableError("the rational enumeration does not converge");
  }
  throw MetrilogError("unreachable sequence expression kind");
}

bool RationalSeqExpr::operator==(const RationalSeqExpr& o) const {
  return kind == o.kind && fixed_value == o.fixed_value && base == o.base && sign == o.sign && a == o.a && b == o.b &&
         var == o.var && enum_index == o.enum_index;
}

// ---------------------------------------------------------------------------
// Constructors

bool Formula::operator==(const Formula& o) const {
  if (kind_ != o.kind_ || name_ != o.name_ || terms_ != o.terms_ || value_ != o.value_ || !(seq_ == o.seq_) ||
      schema_is_list_ != o.schema_is_list_ || children_.size() != o.children_.size()) {
    return false;
  }
  for (size_t i = 0; i < children_.size(); ++i) {
    if (!(*children_[i] == *o.children_[i])) return false;
  }
  return true;
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) { return a == b || *a == *b; }

FormulaPtr Formula::dist(Term t1, Term t2) {
  auto f = make();
  f->kind_ = Kind::atomic_dist;
  f->terms_ = {std::move(t1), std::move(t2)};
  return f;
}

FormulaPtr Formula::pred(std::string name, std::vector<Term> terms) {
  if (terms.empty()) throw MetrilogError("predicate atoms need at least one argument");
  auto f = make();
  f->kind_ = Kind::atomic_pred;
  f->name_ = std::move(name);
  f->terms_ = std::move(terms);
  return f;
}

FormulaPtr Formula::constant(const Rat& q) {
  auto f = make();
  f->kind_ = Kind::rational_const;
  f->value_ = rat01(q);
  return f;
}

FormulaPtr Formula::indexed_rational(RationalSeqExpr expr) {
  auto f = make();
  f->kind_ = Kind::indexed_rational;
  f->seq_ = std::move(expr);
  return f;
}

FormulaPtr Formula::implies(FormulaPtr a, FormulaPtr b) {
  if (!a || !b) throw MetrilogError("implies needs two subformulas");
  auto f = make();
  f->kind_ = Kind::implies;
  f->children_ = {std::move(a), std::move(b)};
  return f;
}

FormulaPtr Formula::sup_var(std::string var, FormulaPtr body) {
  if (var.empty()) throw MetrilogError("sup needs a variable name");
  if (!body) throw MetrilogError("sup needs a body");
  auto f = make();
  f->kind_ = Kind::sup_var;
  f->name_ = std::move(var);
  f->children_ = {std::move(body)};
  return f;
}

FormulaPtr Formula::sup_seq(std::string index_var, FormulaPtr body_template) {
  if (index_var.empty()) throw MetrilogError("schema needs an index variable");
  if (!body_template) throw MetrilogError("schema needs a body");
  auto f = make();
  f->kind_ = Kind::sup_seq;
  f->name_ = std::move(index_var);
  f->children_ = {std::move(body_template)};
  return f;
}

FormulaPtr Formula::sup_list(std::vector<FormulaPtr> members) {
  if (members.empty()) throw MetrilogError("explicit schema list needs at least one member");
  auto f = make();
  f->kind_ = Kind::sup_seq;
  f->schema_is_list_ = true;
  f->children_ = std::move(members);
  return f;
}

// ---------------------------------------------------------------------------
// Macros

FormulaPtr neg(FormulaPtr a) { return Formula::implies(std::move(a), Formula::constant(kZero)); }

FormulaPtr lor(FormulaPtr a, FormulaPtr b) { return Formula::implies(Formula::implies(std::move(a), b), b); }

FormulaPtr land(FormulaPtr a, FormulaPtr b) { return neg(lor(neg(std::move(a)), neg(std::move(b)))); }

FormulaPtr trunc_plus(FormulaPtr a, FormulaPtr b) { return Formula::implies(std::move(a), neg(std::move(b))); }

FormulaPtr inf_var(std::string var, FormulaPtr body) {
  return neg(Formula::sup_var(std::move(var), neg(std::move(body))));
}

FormulaPtr inf_seq(std::string index_var, FormulaPtr body_template) {
  return neg(Formula::sup_seq(std::move(index_var), neg(std::move(body_template))));
}

FormulaPtr inf_list(std::vector<FormulaPtr> members) {
  for (FormulaPtr& m : members) m = neg(std::move(m));
  return neg(Formula::sup_list(std::move(members)));
}

FormulaPtr geq(FormulaPtr a, FormulaPtr threshold) { return Formula::implies(std::move(threshold), std::move(a)); }
FormulaPtr geq(FormulaPtr a, const Rat& r) { return geq(std::move(a), Formula::constant(r)); }
FormulaPtr leq(FormulaPtr a, FormulaPtr threshold) { return Formula::implies(std::move(a), std::move(threshold)); }
FormulaPtr leq(FormulaPtr a, const Rat& r) { return leq(std::move(a), Formula::constant(r)); }

FormulaPtr eq_terms(Term t1, Term t2) { return neg(Formula::dist(std::move(t1), std::move(t2))); }

FormulaPtr disc(FormulaPtr a) { return lor(a, neg(a)); }

FormulaPtr half_approx(FormulaPtr a, int n) {
  if (n < 1) throw MetrilogError("half_approx needs n >= 1");
  FormulaPtr out;
  for (int i = 1; i <= n; ++i) {
    Rat q(i, n);
    FormulaPtr piece = land(Formula::constant(q), neg(Formula::implies(a, Formula::constant(q))));
    out = out ? lor(std::move(out), std::move(piece)) : std::move(piece);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Free variables

namespace {

void collect_free(const Formula& f, std::set<std::string>& out, std::vector<std::string>& bound) {
  switch (f.kind()) {
    case Formula::Kind::atomic_dist:
    case Formula::Kind::atomic_pred:
      for (const Term& t : f.terms()) {
        std::set<std::string> vars;
        collect_term_variables(t, vars);
        for (const auto& v : vars) {
          if (std::find(bound.begin(), bound.end(), v) == bound.end()) out.insert(v);
        }
      }
      break;
    case Formula::Kind::rational_const:
    case Formula::Kind::indexed_rational:
      break;
    case Formula::Kind::implies:
      collect_free(*f.left(), out, bound);
      collect_free(*f.right(), out, bound);
      break;
    case Formula::Kind::sup_var:
      bound.push_back(f.name());
      collect_free(*f.body(), out, bound);
      bound.pop_back();
      break;
    case Formula::Kind::sup_seq:
      // Index variables are not logic variables; the free variables of a
      // schema are the union over all instances, which equals those of the
      // template (or of the listed members).
      for (const FormulaPtr& c : f.children()) collect_free(*c, out, bound);
      break;
  }
}

}  // namespace

std::set<std::string> free_variables(const FormulaPtr& f) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  collect_free(*f, out, bound);
  return out;
}

bool is_closed(const FormulaPtr& f) { return free_variables(f).empty(); }

bool is_finitary(const FormulaPtr& f) {
  if (f->kind() == Formula::Kind::sup_seq) return false;
  for (const FormulaPtr& c : f->children()) {
    if (!is_finitary(c)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

void collect_index_vars(const Formula& f, std::set<std::string>& out) {
  for (const Term& t : f.terms()) collect_term_index_vars(t, out);
  if (f.kind() == Formula::Kind::indexed_rational) {
    const RationalSeqExpr& e = f.seq();
    if (e.kind == RationalSeqExpr::Kind::affine) out.insert(e.var);
    if (e.kind == RationalSeqExpr::Kind::enumeration && !e.enum_index.is_literal()) out.insert(e.enum_index.var);
  }
  if (f.kind() == Formula::Kind::sup_seq && !f.schema_is_list()) out.insert(f.name());
  for (const FormulaPtr& c : f.children()) collect_index_vars(*c, out);
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string name = base;
  while (avoid.count(name)) name += "'";
  return name;
}

FormulaPtr rename_index_var(const FormulaPtr& f, const std::string& from, const std::string& to);

FormulaPtr rename_index_in_children(const FormulaPtr& f, const std::string& from, const std::string& to) {
  switch (f->kind()) {
    case Formula::Kind::atomic_dist: {
      return Formula::dist(rename_term_index_var(f->terms()[0], from, to),
                           rename_term_index_var(f->terms()[1], from, to));
    }
    case Formula::Kind::atomic_pred: {
      std::vector<Term> terms = f->terms();
      for (Term& t : terms) t = rename_term_index_var(t, from, to);
      return Formula::pred(f->name(), std::move(terms));
    }
    case Formula::Kind::rational_const:
      return f;
    case Formula::Kind::indexed_rational: {
      RationalSeqExpr e = f->seq();
      if (e.kind == RationalSeqExpr::Kind::affine && e.var == from) e.var = to;
      if (e.kind == RationalSeqExpr::Kind::enumeration && e.enum_index.var == from) e.enum_index.var = to;
      return Formula::indexed_rational(std::move(e));
    }
    case Formula::Kind::implies:
      return Formula::implies(rename_index_var(f->left(), from, to), rename_index_var(f->right(), from, to));
    case Formula::Kind::sup_var:
      return Formula::sup_var(f->name(), rename_index_var(f->body(), from, to));
    case Formula::Kind::sup_seq: {
      if (f->schema_is_list()) {
        std::vector<FormulaPtr> members;
        members.reserve(f->children().size());
        for (const FormulaPtr& c : f->children()) members.push_back(rename_index_var(c, from, to));
        return Formula::sup_list(std::move(members));
      }
      if (f->name() == from) return f;  // shadowed
      return Formula::sup_seq(f->name(), rename_index_var(f->body(), from, to));
    }
  }
  throw MetrilogError("unreachable formula kind");
}

FormulaPtr rename_index_var(const FormulaPtr& f, const std::string& from, const std::string& to) {
  return rename_index_in_children(f, from, to);
}

}  // namespace

FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const Term& term) {
  std::set<std::string> fv = free_variables(f);
  if (!fv.count(var)) return f;

  switch (f->kind()) {
    case Formula::Kind::atomic_dist:
      return Formula::dist(substitute_term(f->terms()[0], var, term), substitute_term(f->terms()[1], var, term));
    case Formula::Kind::atomic_pred: {
      std::vector<Term> terms = f->terms();
      for (Term& t : terms) t = substitute_term(t, var, term);
      return Formula::pred(f->name(), std::move(terms));
    }
    case Formula::Kind::rational_const:
    case Formula::Kind::indexed_rational:
      return f;
    case Formula::Kind::implies:
      return Formula::implies(substitute(f->left(), var, term), substitute(f->right(), var, term));
    case Formula::Kind::sup_var: {
      if (f->name() == var) return f;  // unreachable given the free check, kept for clarity
      std::set<std::string> term_vars = term_variables(term);
      if (term_vars.count(f->name())) {
        std::set<std::string> avoid = free_variables(f->body());
        avoid.insert(term_vars.begin(), term_vars.end());
        avoid.insert(var);
        std::string renamed = fresh_name(f->name(), avoid);
        FormulaPtr body = substitute(f->body(), f->name(), Term::variable(renamed));
        return Formula::sup_var(renamed, substitute(body, var, term));
      }
      return Formula::sup_var(f->name(), substitute(f->body(), var, term));
    }
    case Formula::Kind::sup_seq: {
      if (f->schema_is_list()) {
        std::vector<FormulaPtr> members;
        members.reserve(f->children().size());
        for (const FormulaPtr& c : f->children()) members.push_back(substitute(c, var, term));
        return Formula::sup_list(std::move(members));
      }
      std::set<std::string> term_index_vars;
      collect_term_index_vars(term, term_index_vars);
      if (term_index_vars.count(f->name())) {
        std::set<std::string> avoid;
        collect_index_vars(*f, avoid);
        avoid.insert(term_index_vars.begin(), term_index_vars.end());
        std::string renamed = fresh_name(f->name(), avoid);
        FormulaPtr body = rename_index_var(f->body(), f->name(), renamed);
        return Formula::sup_seq(renamed, substitute(body, var, term));
      }
      return Formula::sup_seq(f->name(), substitute(f->body(), var, term));
    }
  }
  throw MetrilogError("unreachable formula kind");
}

// ---------------------------------------------------------------------------
// Schema instantiation

namespace {

FormulaPtr resolve_index(const FormulaPtr& f, const std::string& ivar, std::int64_t value) {
  switch (f->kind()) {
    case Formula::Kind::atomic_dist:
      return Formula::dist(resolve_term_index(f->terms()[0], ivar, value),
                           resolve_term_index(f->terms()[1], ivar, value));
    case Formula::Kind::atomic_pred: {
      std::vector<Term> terms = f->terms();
      for (Term& t : terms) t = resolve_term_index(t, ivar, value);
      return Formula::pred(f->name(), std::move(terms));
    }
    case Formula::Kind::rational_const:
      return f;
    case Formula::Kind::indexed_rational: {
      const RationalSeqExpr& e = f->seq();
      if (e.kind == RationalSeqExpr::Kind::affine && e.var == ivar) {
        return Formula::constant(e.value_at(value));
      }
      if (e.kind == RationalSeqExpr::Kind::enumeration && e.enum_index.var == ivar) {
        IndexExpr resolved = e.enum_index.resolved(ivar, value);
        if (resolved.is_literal()) return Formula::constant(enumerated_unit_rational(resolved.value()));
        return Formula::indexed_rational(RationalSeqExpr::enumeration(resolved));
      }
      return f;
    }
    case Formula::Kind::implies:
      return Formula::implies(resolve_index(f->left(), ivar, value), resolve_index(f->right(), ivar, value));
    case Formula::Kind::sup_var:
      return Formula::sup_var(f->name(), resolve_index(f->body(), ivar, value));
    case Formula::Kind::sup_seq: {
      if (f->schema_is_list()) {
        std::vector<FormulaPtr> members;
        members.reserve(f->children().size());
        for (const FormulaPtr& c : f->children()) members.push_back(resolve_index(c, ivar, value));
        return Formula::sup_list(std::move(members));
      }
      if (f->name() == ivar) return f;  // shadowed (rejected by validation, guarded anyway)
      return Formula::sup_seq(f->name(), resolve_index(f->body(), ivar, value));
    }
  }
  throw MetrilogError("unreachable formula kind");
}

}  // namespace

FormulaPtr instantiate(const FormulaPtr& schema, std::int64_t i) {
  if (schema->kind() != Formula::Kind::sup_seq) throw EvalError("instantiate needs a schema node");
  if (i < 0) throw EvalError("schema instance index must be nonnegative");
  if (schema->schema_is_list()) {
    if (i >= static_cast<std::int64_t>(schema->children().size())) {
      throw EvalError("explicit schema list has no member " + std::to_string(i));
    }
    return schema->children()[static_cast<size_t>(i)];
  }
  return resolve_index(schema->body(), schema->name(), i);
}

// ---------------------------------------------------------------------------
// Validation

namespace {

void validate_term(const Term& t, const Signature& sig, const std::set<std::string>& index_vars) {
  switch (t.kind) {
    case Term::Kind::variable:
      if (t.name.empty()) throw EvalError("empty variable name");
      if (index_vars.count(t.name)) throw EvalError("index variable '" + t.name + "' used as a logic variable");
      if (sig.has_symbol(t.name)) throw EvalError("variable '" + t.name + "' collides with a declared symbol");
      break;
    case Term::Kind::constant:
      if (!sig.has_constant(t.name)) throw EvalError("unknown constant '" + t.name + "'");
      break;
    case Term::Kind::indexed_constant:
      if (!sig.has_family(t.name)) throw EvalError("unknown family '" + t.name + "'");
      if (!t.index.is_literal() && !index_vars.count(t.index.var)) {
        throw EvalError("unbound index variable '" + t.index.var + "'");
      }
      if (t.index.coeff < 0 || t.index.offset < 0) throw EvalError("negative index expression");
      break;
    case Term::Kind::apply: {
      const FunctionSymbol* f = sig.find_function(t.name);
      if (!f) throw EvalError("unknown function '" + t.name + "'");
      if (static_cast<int>(t.args.size()) != f->arity) {
        throw EvalError("arity mismatch for function '" + t.name + "'");
      }
      for (const Term& a : t.args) validate_term(a, sig, index_vars);
      break;
    }
  }
}

void validate_impl(const Formula& f, const Signature& sig, std::set<std::string>& index_vars) {
  switch (f.kind()) {
    case Formula::Kind::atomic_dist:
      for (const Term& t : f.terms()) validate_term(t, sig, index_vars);
      break;
    case Formula::Kind::atomic_pred: {
      const PredicateSymbol* p = sig.find_predicate(f.name());
      if (!p) throw EvalError("unknown predicate '" + f.name() + "'");
      if (static_cast<int>(f.terms().size()) != p->arity) {
        throw EvalError("arity mismatch for predicate '" + f.name() + "'");
      }
      for (const Term& t : f.terms()) validate_term(t, sig, index_vars);
      break;
    }
    case Formula::Kind::rational_const:
      rat01(f.value());
      break;
    case Formula::Kind::indexed_rational: {
      const RationalSeqExpr& e = f.seq();
      if (e.kind == RationalSeqExpr::Kind::fixed) {
        throw EvalError("fixed rational presented as an indexed expression");
      }
      const std::string& var = e.kind == RationalSeqExpr::Kind::affine ? e.var : e.enum_index.var;
      if (!var.empty() && !index_vars.count(var)) throw EvalError("unbound index variable '" + var + "'");
      if (e.kind == RationalSeqExpr::Kind::enumeration && var.empty()) {
        throw EvalError("unresolved literal enumeration constant");
      }
      break;
    }
    case Formula::Kind::implies:
      validate_impl(*f.left(), sig, index_vars);
      validate_impl(*f.right(), sig, index_vars);
      break;
    case Formula::Kind::sup_var:
      if (index_vars.count(f.name())) throw EvalError("index variable '" + f.name() + "' bound by sup");
      if (sig.has_symbol(f.name())) throw EvalError("bound variable '" + f.name() + "' collides with a symbol");
      validate_impl(*f.body(), sig, index_vars);
      break;
    case Formula::Kind::sup_seq:
      if (f.schema_is_list()) {
        for (const FormulaPtr& c : f.children()) validate_impl(*c, sig, index_vars);
      } else {
        if (index_vars.count(f.name())) throw EvalError("shadowed index variable '" + f.name() + "'");
        index_vars.insert(f.name());
        validate_impl(*f.body(), sig, index_vars);
        index_vars.erase(f.name());
      }
      break;
  }
}

}  // namespace

void validate_formula(const FormulaPtr& f, const Signature& sig) {
  std::set<std::string> index_vars;
  validate_impl(*f, sig, index_vars);
}

// ---------------------------------------------------------------------------
// Fragment membership

namespace {

bool match_term(const Term& pattern, const Term& subject, const std::set<std::string>& pattern_vars,
                std::map<std::string, Term>& sub) {
  if (pattern.kind == Term::Kind::variable && pattern_vars.count(pattern.name)) {
    auto it = sub.find(pattern.name);
    if (it != sub.end()) return it->second == subject;
    sub.emplace(pattern.name, subject);
    return true;
  }
  if (pattern.kind != subject.kind || pattern.name != subject.name || !(pattern.index == subject.index) ||
      pattern.args.size() != subject.args.size()) {
    return false;
  }
  for (size_t i = 0; i < pattern.args.size(); ++i) {
    if (!match_term(pattern.args[i], subject.args[i], pattern_vars, sub)) return false;
  }
  return true;
}

bool match_formula(const Formula& pattern, const Formula& subject, std::set<std::string> pattern_vars,
                   std::map<std::string, Term>& sub) {
  if (pattern.kind() != subject.kind()) return false;
  switch (pattern.kind()) {
    case Formula::Kind::atomic_dist:
    case Formula::Kind::atomic_pred: {
      if (pattern.name() != subject.name() || pattern.terms().size() != subject.terms().size()) return false;
      for (size_t i = 0; i < pattern.terms().size(); ++i) {
        if (!match_term(pattern.terms()[i], subject.terms()[i], pattern_vars, sub)) return false;
      }
      return true;
    }
    case Formula::Kind::rational_const:
      return pattern.value() == subject.value();
    case Formula::Kind::indexed_rational:
      return pattern.seq() == subject.seq();
    case Formula::Kind::implies:
      return match_formula(*pattern.left(), *subject.left(), pattern_vars, sub) &&
             match_formula(*pattern.right(), *subject.right(), pattern_vars, sub);
    case Formula::Kind::sup_var: {
      if (pattern.name() != subject.name()) return false;
      pattern_vars.erase(pattern.name());
      return match_formula(*pattern.body(), *subject.body(), std::move(pattern_vars), sub);
    }
    case Formula::Kind::sup_seq: {
      if (pattern.schema_is_list() != subject.schema_is_list() || pattern.name() != subject.name() ||
          pattern.children().size() != subject.children().size()) {
        return false;
      }
      for (size_t i = 0; i < pattern.children().size(); ++i) {
        if (!match_formula(*pattern.children()[i], *subject.children()[i], pattern_vars, sub)) return false;
      }
      return true;
    }
  }
  return false;
}

bool is_substitution_instance(const FormulaPtr& generator, const FormulaPtr& f) {
  std::map<std::string, Term> sub;
  return match_formula(*generator, *f, free_variables(generator), sub);
}

}  // namespace

bool in_fragment_closure(const FormulaPtr& f, const std::vector<FormulaPtr>& generators, int depth) {
  switch (f->kind()) {
    case Formula::Kind::atomic_dist:
    case Formula::Kind::atomic_pred:
    case Formula::Kind::rational_const:
      return true;
    default:
      break;
  }
  for (const FormulaPtr& g : generators) {
    if (equal(f, g)) return true;
  }
  if (depth <= 0) return false;
  if (f->kind() == Formula::Kind::implies) {
    if (in_fragment_closure(f->left(), generators, depth - 1) &&
        in_fragment_closure(f->right(), generators, depth - 1)) {
      return true;
    }
  }
  if (f->kind() == Formula::Kind::sup_var) {
    if (in_fragment_closure(f->body(), generators, depth - 1)) return true;
  }
  for (const FormulaPtr& g : generators) {
    if (is_substitution_instance(g, f)) return true;
  }
  return false;
}

bool in_fragment_closure(const FormulaPtr& f, const FragmentSpec& fragment, int depth) {
  return in_fragment_closure(f, fragment.generators, depth);
}

}  // namespace metrilog
