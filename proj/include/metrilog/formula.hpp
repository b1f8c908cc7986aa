#ifndef METRILOG_FORMULA_HPP
#define METRILOG_FORMULA_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "metrilog/rational.hpp"
#include "metrilog/signature.hpp"
#include "metrilog/term.hpp"

namespace metrilog {

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Rational-valued sequence expression, the leaf language of ω-indexed
/// schemas (and of declared convergent value tails):
///   fixed        q
///   affine       base + sign * a/(i + b)   with a, b >= 1, every value in [0,1]
///   enumeration  qenum[expr], the library enumeration of Q∩(0,1)
struct RationalSeqExpr {
  enum class Kind { fixed, affine, enumeration };

  Kind kind = Kind::fixed;
  Rat fixed_value;
  Rat base;
  int sign = 1;  // +1 or -1
  std::int64_t a = 1;
  std::int64_t b = 1;
  std::string var;       // affine index variable; empty once resolved is not allowed
  IndexExpr enum_index;  // enumeration

  static RationalSeqExpr fixed(const Rat& q);
  static RationalSeqExpr affine(Rat base, int sign, std::int64_t a, std::int64_t b, std::string var);
  static RationalSeqExpr enumeration(IndexExpr index);

  Rat value_at(std::int64_t i) const;  // affine/enumeration value at index i
  Rat limit() const;                   // fixed/affine only; enumerations do not converge

  bool operator==(const RationalSeqExpr& o) const;
};

/// Formula AST.  The evaluator sees exactly the five core constructors;
/// every derived connective is a macro expanded eagerly at construction.
///
/// indexed_rational leaves may only occur inside a sup_seq template whose
/// index variable they mention; instantiation turns them into plain
/// rational constants.
class Formula {
 public:
  enum class Kind {
    atomic_dist,       // d(t1, t2)
    atomic_pred,       // P(t1, ..., tn)
    rational_const,    // q
    indexed_rational,  // rational expression in a schema index
    implies,           // phi -> psi (Lukasiewicz)
    sup_var,           // sup x . phi
    sup_seq            // Vee i . phi  |  Vee { phi_0 ; ... ; phi_k }
  };

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }  // predicate / bound var / index var
  const std::vector<Term>& terms() const { return terms_; }
  const Rat& value() const { return value_; }
  const RationalSeqExpr& seq() const { return seq_; }
  const std::vector<FormulaPtr>& children() const { return children_; }
  bool schema_is_list() const { return schema_is_list_; }

  const FormulaPtr& left() const { return children_.at(0); }
  const FormulaPtr& right() const { return children_.at(1); }
  const FormulaPtr& body() const { return children_.at(0); }

  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }

  // Core constructors.
  static FormulaPtr dist(Term t1, Term t2);
  static FormulaPtr pred(std::string name, std::vector<Term> terms);
  static FormulaPtr constant(const Rat& q);
  static FormulaPtr indexed_rational(RationalSeqExpr expr);
  static FormulaPtr implies(FormulaPtr a, FormulaPtr b);
  static FormulaPtr sup_var(std::string var, FormulaPtr body);
  static FormulaPtr sup_seq(std::string index_var, FormulaPtr body_template);
  static FormulaPtr sup_list(std::vector<FormulaPtr> members);

 private:
  Formula() = default;
  static std::shared_ptr<Formula> make() { return std::shared_ptr<Formula>(new Formula()); }

  Kind kind_ = Kind::rational_const;
  std::string name_;
  std::vector<Term> terms_;
  Rat value_;
  RationalSeqExpr seq_;
  std::vector<FormulaPtr> children_;
  bool schema_is_list_ = false;
};

bool equal(const FormulaPtr& a, const FormulaPtr& b);

// ---------------------------------------------------------------------------
// Derived connectives (macro layer, expanded eagerly).

FormulaPtr neg(FormulaPtr a);                       // a -> 0
FormulaPtr lor(FormulaPtr a, FormulaPtr b);         // (a -> b) -> b
FormulaPtr land(FormulaPtr a, FormulaPtr b);        // ~(~a \/ ~b)
FormulaPtr trunc_plus(FormulaPtr a, FormulaPtr b);  // a -> ~b
FormulaPtr inf_var(std::string var, FormulaPtr body);
FormulaPtr inf_seq(std::string index_var, FormulaPtr body_template);
FormulaPtr inf_list(std::vector<FormulaPtr> members);
FormulaPtr geq(FormulaPtr a, FormulaPtr threshold);  // threshold -> a
FormulaPtr geq(FormulaPtr a, const Rat& r);
FormulaPtr leq(FormulaPtr a, FormulaPtr threshold);  // a -> threshold
FormulaPtr leq(FormulaPtr a, const Rat& r);
FormulaPtr eq_terms(Term t1, Term t2);  // ~d(t1, t2)
FormulaPtr disc(FormulaPtr a);          // a \/ ~a
FormulaPtr half_approx(FormulaPtr a, int n);  // \/_{i=1..n} (i/n /\ ~(a -> i/n))

// ---------------------------------------------------------------------------
// Syntactic operations.

std::set<std::string> free_variables(const FormulaPtr& f);
bool is_closed(const FormulaPtr& f);
bool is_finitary(const FormulaPtr& f);  // no sup_seq anywhere

/// Capture-avoiding substitution of a term for a free variable; bound
/// variables (and schema index variables captured by the term) are renamed
/// with primes as needed.
FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const Term& term);

/// i-th member of a schema node (kind sup_seq).  Template schemas resolve
/// their index variable; explicit lists index into the member list.
FormulaPtr instantiate(const FormulaPtr& schema, std::int64_t i);

/// Static well-formedness against a signature: declared symbols, arities,
/// index-variable scoping, affine-expression ranges.
void validate_formula(const FormulaPtr& f, const Signature& sig);

// ---------------------------------------------------------------------------
// Fragments.

struct FragmentSpec {
  std::vector<FormulaPtr> generators;
  bool continuous = false;  // metadata only
};

/// Bounded membership search for the fragment generated by the atomic
/// formulas, the rational constants and `generators` under sup_x, ->, ~ and
/// term substitution.  `true` is a derivation witness within `depth` steps;
/// `false` only means "not found within depth".  Substitution instances are
/// recognized against generators by first-order matching.
bool in_fragment_closure(const FormulaPtr& f, const std::vector<FormulaPtr>& generators, int depth);
bool in_fragment_closure(const FormulaPtr& f, const FragmentSpec& fragment, int depth);

}  // namespace metrilog

#endif
