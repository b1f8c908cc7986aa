#ifndef METRILOG_TERM_HPP
#define METRILOG_TERM_HPP

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "metrilog/errors.hpp"

namespace metrilog {

/// Index expression for an indexed constant: coeff * var + offset with
/// nonnegative integer coefficients.  An empty var means the literal value
/// `offset`.
struct IndexExpr {
  std::string var;
  std::int64_t coeff = 0;
  std::int64_t offset = 0;

  static IndexExpr literal(std::int64_t value) { return IndexExpr{"", 0, value}; }
  static IndexExpr affine(std::string var, std::int64_t coeff, std::int64_t offset);

  bool is_literal() const { return var.empty(); }
  std::int64_t value() const;                        // literal only
  IndexExpr resolved(const std::string& var_name, std::int64_t value) const;

  bool operator==(const IndexExpr& o) const { return var == o.var && coeff == o.coeff && offset == o.offset; }
};

/// First-order terms: variables, constants, indexed constants c[expr], and
/// function applications.
struct Term {
  enum class Kind { variable, constant, indexed_constant, apply };

  Kind kind = Kind::variable;
  std::string name;        // variable / constant / family / function name
  IndexExpr index;         // indexed_constant
  std::vector<Term> args;  // apply

  static Term variable(std::string name) { return Term{Kind::variable, std::move(name), {}, {}}; }
  static Term constant(std::string name) { return Term{Kind::constant, std::move(name), {}, {}}; }
  static Term indexed(std::string family, IndexExpr index) {
    return Term{Kind::indexed_constant, std::move(family), std::move(index), {}};
  }
  static Term apply(std::string function, std::vector<Term> args) {
    return Term{Kind::apply, std::move(function), {}, std::move(args)};
  }

  bool operator==(const Term& o) const {
    return kind == o.kind && name == o.name && index == o.index && args == o.args;
  }
  bool operator!=(const Term& o) const { return !(*this == o); }
};

void collect_term_variables(const Term& t, std::set<std::string>& out);
void collect_term_index_vars(const Term& t, std::set<std::string>& out);
std::set<std::string> term_variables(const Term& t);

/// Replaces free occurrences of `var` by `replacement` (terms bind nothing,
/// so this is plain rewriting).
Term substitute_term(const Term& t, const std::string& var, const Term& replacement);

/// Resolves one schema index variable to a concrete value inside index
/// expressions.
Term resolve_term_index(const Term& t, const std::string& index_var, std::int64_t value);

/// Renames a schema index variable (used for capture avoidance).
Term rename_term_index_var(const Term& t, const std::string& from, const std::string& to);

}  // namespace metrilog

#endif
