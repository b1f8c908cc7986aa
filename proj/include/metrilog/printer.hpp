#ifndef METRILOG_PRINTER_HPP
#define METRILOG_PRINTER_HPP

#include <string>
#include <vector>

#include "metrilog/omitting.hpp"

namespace metrilog {

/// List of structure file paths as written in a .mreg document.
struct RegistryFile {
  std::vector<std::string> paths;
};

/// Canonical pretty-printers.  parse(print(x)) is structurally equal to x
/// for every document kind, and printing is idempotent on parsed input.
std::string print_term(const Term& t);
std::string print_formula(const FormulaPtr& f);
std::string print_modulus(const Modulus& m);
std::string print_signature(const Signature& sig);
std::string print_structure(const MetricStructure& m);
std::string print_theory(const Theory& t);
std::string print_type(const PartialType& type);
std::string print_registry(const RegistryFile& reg);

}  // namespace metrilog

#endif
