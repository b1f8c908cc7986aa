#include "metrilog/printer.hpp"

#include <sstream>

namespace metrilog {

namespace {

const Rat kZero(0, 1);
const Rat kOne(1, 1);

std::string print_index_expr(const IndexExpr& e) {
  if (e.is_literal()) return std::to_string(e.offset);
  std::string out;
  if (e.coeff != 1) out += std::to_string(e.coeff);
  out += e.var;
  if (e.offset != 0) out += "+" + std::to_string(e.offset);
  return out;
}

std::string print_seq_expr(const RationalSeqExpr& e) {
  switch (e.kind) {
    case RationalSeqExpr::Kind::fixed:
      return e.fixed_value.str();
    case RationalSeqExpr::Kind::affine: {
      std::string frac = std::to_string(e.a) + "/(" + e.var + "+" + std::to_string(e.b) + ")";
      if (e.base.is_zero() && e.sign > 0) return frac;
      return e.base.str() + (e.sign > 0 ? " + " : " - ") + frac;
    }
    case RationalSeqExpr::Kind::enumeration:
      return "qenum[" + print_index_expr(e.enum_index) + "]";
  }
  throw MetrilogError("unreachable sequence expression kind");
}

// --------------------------------------------------------------------------
// Formulas.  Precedence levels, loosest first: -> and comparisons (0),
// \/ (1), /\ (2), (+) (3), prefix ~ (4), atoms.  Quantifier prefixes take
// the longest possible body, so they print bare only in tail position.

enum Level : int { kImp = 0, kOr = 1, kAnd = 2, kPlus = 3, kUnary = 4 };

bool is_const_zero(const Formula& f) {
  return f.kind() == Formula::Kind::rational_const && f.value().is_zero();
}

bool is_neg(const Formula& f) { return f.kind() == Formula::Kind::implies && is_const_zero(*f.right()); }

struct View {
  enum class Kind { atom, neg, inf_var, wedge_template, wedge_list, conj, disj, plus, geq, leq, implies, quant };
  Kind kind;
};

std::string print(const FormulaPtr& f, int level, bool tail);

std::string wrap(int level, int natural, const std::string& text) {
  if (natural < level) return "(" + text + ")";
  return text;
}

std::string print_quant(const std::string& head, const FormulaPtr& body, int level, bool tail) {
  std::string text = head + " . " + print(body, kImp, true);
  if (!tail || level > kUnary) return "(" + text + ")";
  return text;
}

std::string print_list(const std::string& head, const std::vector<FormulaPtr>& members, bool negate_members) {
  std::string out = head + " { ";
  for (size_t i = 0; i < members.size(); ++i) {
    if (i) out += " ; ";
    const FormulaPtr& m = members[i];
    out += print(negate_members ? m->left() : m, kImp, true);
  }
  out += " }";
  return out;
}

std::string print(const FormulaPtr& f, int level, bool tail) {
  switch (f->kind()) {
    case Formula::Kind::atomic_dist:
      return "d(" + print_term(f->terms()[0]) + ", " + print_term(f->terms()[1]) + ")";
    case Formula::Kind::atomic_pred: {
      std::string out = f->name() + "(";
      for (size_t i = 0; i < f->terms().size(); ++i) {
        if (i) out += ", ";
        out += print_term(f->terms()[i]);
      }
      return out + ")";
    }
    case Formula::Kind::rational_const:
      return f->value().str();
    case Formula::Kind::indexed_rational:
      return print_seq_expr(f->seq());
    case Formula::Kind::sup_var:
      return print_quant("sup " + f->name(), f->body(), level, tail);
    case Formula::Kind::sup_seq: {
      if (f->schema_is_list()) {
        std::string text = print_list("Vee", f->children(), false);
        return level > kUnary ? "(" + text + ")" : text;
      }
      return print_quant("Vee " + f->name(), f->body(), level, tail);
    }
    case Formula::Kind::implies:
      break;
  }

  const FormulaPtr& left = f->left();
  const FormulaPtr& right = f->right();

  if (is_const_zero(*right)) {
    // Negation family: ~phi, inf, Wedge, /\.
    if (left->kind() == Formula::Kind::sup_var && is_neg(*left->body())) {
      return print_quant("inf " + left->name(), left->body()->left(), level, tail);
    }
    if (left->kind() == Formula::Kind::sup_seq && !left->schema_is_list() && is_neg(*left->body())) {
      return print_quant("Wedge " + left->name(), left->body()->left(), level, tail);
    }
    if (left->kind() == Formula::Kind::sup_seq && left->schema_is_list()) {
      bool all_neg = true;
      for (const FormulaPtr& m : left->children()) all_neg &= is_neg(*m);
      if (all_neg) {
        std::string text = print_list("Wedge", left->children(), true);
        return level > kUnary ? "(" + text + ")" : text;
      }
    }
    if (left->kind() == Formula::Kind::implies && left->left()->kind() == Formula::Kind::implies &&
        equal(left->left()->right(), left->right()) && is_neg(*left->left()->left()) && is_neg(*left->right())) {
      // ~(~a \/ ~b)  prints as  a /\ b
      const FormulaPtr& a = left->left()->left()->left();
      const FormulaPtr& b = left->right()->left();
      std::string text = print(a, kAnd, false) + " /\\ " + print(b, kPlus, tail);
      return wrap(level, kAnd, text);
    }
    return wrap(level, kUnary, "~" + print(left, kUnary, tail));
  }
  if (left->kind() == Formula::Kind::implies && equal(left->right(), right)) {
    // (a -> b) -> b  prints as  a \/ b
    std::string text = print(left->left(), kOr, false) + " \\/ " + print(right, kAnd, tail);
    return wrap(level, kOr, text);
  }
  if (is_neg(*right)) {
    // a -> ~b  prints as  a (+) b
    std::string text = print(left, kPlus, false) + " (+) " + print(right->left(), kUnary, tail);
    return wrap(level, kPlus, text);
  }
  std::string text = print(left, kOr, false) + " -> " + print(right, kImp, tail);
  return wrap(level, kImp, text);
}

std::string indent_lines(const std::string& block, const std::string& prefix) {
  std::istringstream in(block);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) out << prefix << line << "\n";
  return out.str();
}

}  // namespace

std::string print_term(const Term& t) {
  switch (t.kind) {
    case Term::Kind::variable:
    case Term::Kind::constant:
      return t.name;
    case Term::Kind::indexed_constant:
      return t.name + "[" + print_index_expr(t.index) + "]";
    case Term::Kind::apply: {
      std::string out = t.name + "(";
      for (size_t i = 0; i < t.args.size(); ++i) {
        if (i) out += ", ";
        out += print_term(t.args[i]);
      }
      return out + ")";
    }
  }
  throw MetrilogError("unreachable term kind");
}

std::string print_formula(const FormulaPtr& f) { return print(f, kImp, true); }

std::string print_modulus(const Modulus& m) {
  switch (m.kind()) {
    case Modulus::Kind::identity:
      return "identity";
    case Modulus::Kind::linear:
      return "linear " + m.slope().str();
    case Modulus::Kind::constant:
      return "constant " + m.constant_value().str();
    case Modulus::Kind::table: {
      std::string out = "table";
      for (const auto& [eps, delta] : m.samples()) out += " " + eps.str() + " " + delta.str();
      return out;
    }
  }
  throw MetrilogError("unreachable modulus kind");
}

std::string print_signature(const Signature& sig) {
  std::ostringstream out;
  out << "signature\n";
  for (const auto& f : sig.functions()) {
    out << "  function " << f.name << " " << f.arity << " " << print_modulus(f.modulus) << "\n";
  }
  for (const auto& p : sig.predicates()) {
    out << "  predicate " << p.name << " " << p.arity << " " << print_modulus(p.modulus) << "\n";
  }
  for (const auto& c : sig.constants()) out << "  constant " << c << "\n";
  for (const auto& f : sig.families()) out << "  family " << f << "\n";
  out << "end\n";
  return out.str();
}

std::string print_structure(const MetricStructure& m) {
  std::ostringstream out;
  out << "structure\n";
  out << indent_lines(print_signature(m.sig()), "  ");
  out << "  points";
  for (const auto& p : m.points()) out << " " << p;
  out << "\n";
  out << "  metric\n";
  const int n = m.point_count();
  for (int i = 0; i < n; ++i) {
    if (!m.distance(i, i).is_zero()) {
      out << "    " << m.point_name(i) << " " << m.point_name(i) << " " << m.distance(i, i).str() << "\n";
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      out << "    " << m.point_name(i) << " " << m.point_name(j) << " " << m.distance(i, j).str() << "\n";
      if (m.distance(j, i) != m.distance(i, j)) {
        out << "    " << m.point_name(j) << " " << m.point_name(i) << " " << m.distance(j, i).str() << "\n";
      }
    }
  }
  out << "  end\n";
  for (const auto& f : m.sig().functions()) {
    out << "  function " << f.name << "\n";
    const size_t count = m.tuple_count(f.arity);
    for (size_t t = 0; t < count; ++t) {
      std::vector<int> args = m.tuple_at(t, f.arity);
      out << "   ";
      for (int a : args) out << " " << m.point_name(a);
      out << " " << m.point_name(m.apply_function(f.name, args)) << "\n";
    }
    out << "  end\n";
  }
  for (const auto& p : m.sig().predicates()) {
    out << "  predicate " << p.name << "\n";
    const size_t count = m.tuple_count(p.arity);
    for (size_t t = 0; t < count; ++t) {
      std::vector<int> args = m.tuple_at(t, p.arity);
      out << "   ";
      for (int a : args) out << " " << m.point_name(a);
      out << " " << m.predicate_value(p.name, args).str() << "\n";
    }
    out << "  end\n";
  }
  for (const auto& c : m.sig().constants()) {
    out << "  constant " << c << " " << m.point_name(m.constant_point(c)) << "\n";
  }
  for (const auto& fam : m.sig().families()) {
    const FamilyInterp& interp = m.family(fam);
    out << "  family " << fam;
    for (int p : interp.prefix) out << " " << m.point_name(p);
    out << " tail " << m.point_name(interp.tail) << "\n";
  }
  out << "end\n";
  return out.str();
}

std::string print_theory(const Theory& t) {
  std::ostringstream out;
  out << "theory " << t.name << "\n";
  for (const FormulaPtr& s : t.sentences) out << "  " << print_formula(s) << "\n";
  out << "end\n";
  return out.str();
}

std::string print_type(const PartialType& type) {
  std::ostringstream out;
  out << "type " << type.name << "\n";
  out << "  vars";
  for (const auto& v : type.variables) out << " " << v;
  out << "\n";
  for (const FormulaPtr& f : type.formulas) out << "  " << print_formula(f) << "\n";
  out << "end\n";
  return out.str();
}

std::string print_registry(const RegistryFile& reg) {
  std::ostringstream out;
  out << "registry\n";
  for (const auto& p : reg.paths) out << "  " << p << "\n";
  out << "end\n";
  return out.str();
}

}  // namespace metrilog
