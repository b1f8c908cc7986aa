#ifndef METRILOG_SIGNATURE_HPP
#define METRILOG_SIGNATURE_HPP

#include <optional>
#include <string>
#include <vector>

#include "metrilog/modulus.hpp"

namespace metrilog {

struct FunctionSymbol {
  std::string name;
  int arity = 1;
  Modulus modulus = Modulus::identity();

  bool operator==(const FunctionSymbol& o) const {
    return name == o.name && arity == o.arity && modulus == o.modulus;
  }
};

struct PredicateSymbol {
  std::string name;
  int arity = 1;
  Modulus modulus = Modulus::identity();

  bool operator==(const PredicateSymbol& o) const {
    return name == o.name && arity == o.arity && modulus == o.modulus;
  }
};

/// Declared symbols of a metric signature.  Function and predicate symbols
/// carry an arity >= 1 and a modulus of continuity; `families` lists the
/// countable indexed constant families c[0], c[1], ...
class Signature {
 public:
  Signature() = default;

  void add_function(FunctionSymbol f);
  void add_predicate(PredicateSymbol p);
  void add_constant(std::string name);
  void add_family(std::string name);

  const std::vector<FunctionSymbol>& functions() const { return functions_; }
  const std::vector<PredicateSymbol>& predicates() const { return predicates_; }
  const std::vector<std::string>& constants() const { return constants_; }
  const std::vector<std::string>& families() const { return families_; }

  const FunctionSymbol* find_function(const std::string& name) const;
  const PredicateSymbol* find_predicate(const std::string& name) const;
  bool has_constant(const std::string& name) const;
  bool has_family(const std::string& name) const;
  bool has_symbol(const std::string& name) const;

  bool operator==(const Signature& o) const {
    return functions_ == o.functions_ && predicates_ == o.predicates_ && constants_ == o.constants_ &&
           families_ == o.families_;
  }
  bool operator!=(const Signature& o) const { return !(*this == o); }

 private:
  void check_fresh(const std::string& name) const;

  std::vector<FunctionSymbol> functions_;
  std::vector<PredicateSymbol> predicates_;
  std::vector<std::string> constants_;
  std::vector<std::string> families_;
};

/// Names that cannot be declared in a signature because the formula grammar
/// reserves them.
bool is_reserved_name(const std::string& name);

}  // namespace metrilog

#endif
