#include "metrilog/signature.hpp"

#include <algorithm>

namespace metrilog {

bool is_reserved_name(const std::string& name) {
  static const char* kReserved[] = {"d", "sup", "inf", "Vee", "Wedge", "qenum", "Disc", "Half", "Eq", "tail"};
  return std::any_of(std::begin(kReserved), std::end(kReserved), [&](const char* r) { return name == r; });
}

void Signature::check_fresh(const std::string& name) const {
  if (name.empty()) throw MetrilogError("empty symbol name");
  if (is_reserved_name(name)) throw MetrilogError("symbol name '" + name + "' is reserved");
  if (has_symbol(name)) throw MetrilogError("duplicate symbol name '" + name + "'");
}

void Signature::add_function(FunctionSymbol f) {
  check_fresh(f.name);
  if (f.arity < 1) throw MetrilogError("function symbol '" + f.name + "' needs arity >= 1");
  functions_.push_back(std::move(f));
}

void Signature::add_predicate(PredicateSymbol p) {
  check_fresh(p.name);
  if (p.arity < 1) throw MetrilogError("predicate symbol '" + p.name + "' needs arity >= 1");
  predicates_.push_back(std::move(p));
}

void Signature::add_constant(std::string name) {
  check_fresh(name);
  constants_.push_back(std::move(name));
}

void Signature::add_family(std::string name) {
  check_fresh(name);
  families_.push_back(std::move(name));
}

const FunctionSymbol* Signature::find_function(const std::string& name) const {
  for (const auto& f : functions_) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

const PredicateSymbol* Signature::find_predicate(const std::string& name) const {
  for (const auto& p : predicates_) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

bool Signature::has_constant(const std::string& name) const {
  return std::find(constants_.begin(), constants_.end(), name) != constants_.end();
}

bool Signature::has_family(const std::string& name) const {
  return std::find(families_.begin(), families_.end(), name) != families_.end();
}

bool Signature::has_symbol(const std::string& name) const {
  return find_function(name) || find_predicate(name) || has_constant(name) || has_family(name);
}

}  // namespace metrilog
