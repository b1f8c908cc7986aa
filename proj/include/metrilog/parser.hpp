#ifndef METRILOG_PARSER_HPP
#define METRILOG_PARSER_HPP

#include <string>

#include "metrilog/printer.hpp"

namespace metrilog {

/// Deterministic recursive-descent parsers for the text document kinds.
/// All errors are reported as ParseError with line/column positions;
/// identical input bytes yield identical objects and identical messages.

Signature parse_signature(const std::string& text, const std::string& filename = "");
MetricStructure parse_structure(const std::string& text, const std::string& filename = "");
FormulaPtr parse_formula(const std::string& text, const Signature& sig, const std::string& filename = "");
Term parse_term(const std::string& text, const Signature& sig, const std::string& filename = "");
Theory parse_theory(const std::string& text, const Signature& sig, const std::string& filename = "");
PartialType parse_type(const std::string& text, const Signature& sig, const std::string& filename = "");
RegistryFile parse_registry_file(const std::string& text, const std::string& filename = "");

/// "p/q" (reduced), "0" or "1".
Rat parse_rational(const std::string& text);

}  // namespace metrilog

#endif
