#include "metrilog/term.hpp"

namespace metrilog {

IndexExpr IndexExpr::affine(std::string var, std::int64_t coeff, std::int64_t offset) {
  if (var.empty()) throw MetrilogError("affine index expression needs a variable");
  if (coeff < 0 || offset < 0) throw MetrilogError("index expressions need nonnegative coefficients");
  return IndexExpr{std::move(var), coeff, offset};
}

std::int64_t IndexExpr::value() const {
  if (!is_literal()) throw EvalError("unresolved index variable '" + var + "'");
  return offset;
}

IndexExpr IndexExpr::resolved(const std::string& var_name, std::int64_t value) const {
  if (var != var_name) return *this;
  return literal(coeff * value + offset);
}

void collect_term_variables(const Term& t, std::set<std::string>& out) {
  switch (t.kind) {
    case Term::Kind::variable:
      out.insert(t.name);
      break;
    case Term::Kind::constant:
    case Term::Kind::indexed_constant:
      break;
    case Term::Kind::apply:
      for (const Term& a : t.args) collect_term_variables(a, out);
      break;
  }
}

void collect_term_index_vars(const Term& t, std::set<std::string>& out) {
  switch (t.kind) {
    case Term::Kind::indexed_constant:
      if (!t.index.is_literal()) out.insert(t.index.var);
      break;
    case Term::Kind::apply:
      for (const Term& a : t.args) collect_term_index_vars(a, out);
      break;
    default:
      break;
  }
}

std::set<std::string> term_variables(const Term& t) {
  std::set<std::string> out;
  collect_term_variables(t, out);
  return out;
}

Term substitute_term(const Term& t, const std::string& var, const Term& replacement) {
  switch (t.kind) {
    case Term::Kind::variable:
      return t.name == var ? replacement : t;
    case Term::Kind::constant:
    case Term::Kind::indexed_constant:
      return t;
    case Term::Kind::apply: {
      Term out = t;
      for (Term& a : out.args) a = substitute_term(a, var, replacement);
      return out;
    }
  }
  throw MetrilogError("unreachable term kind");
}

Term resolve_term_index(const Term& t, const std::string& index_var, std::int64_t value) {
  switch (t.kind) {
    case Term::Kind::indexed_constant: {
      Term out = t;
      out.index = t.index.resolved(index_var, value);
      return out;
    }
    case Term::Kind::apply: {
      Term out = t;
      for (Term& a : out.args) a = resolve_term_index(a, index_var, value);
      return out;
    }
    default:
      return t;
  }
}

Term rename_term_index_var(const Term& t, const std::string& from, const std::string& to) {
  switch (t.kind) {
    case Term::Kind::indexed_constant: {
      Term out = t;
      if (out.index.var == from) out.index.var = to;
      return out;
    }
    case Term::Kind::apply: {
      Term out = t;
      for (Term& a : out.args) a = rename_term_index_var(a, from, to);
      return out;
    }
    default:
      return t;
  }
}

}  // namespace metrilog
