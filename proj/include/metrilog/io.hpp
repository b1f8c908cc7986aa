#ifndef METRILOG_IO_HPP
#define METRILOG_IO_HPP

#include <string>

#include "metrilog/parser.hpp"

namespace metrilog {

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

Signature load_signature(const std::string& path);
MetricStructure load_structure(const std::string& path);
FormulaPtr load_formula(const std::string& path, const Signature& sig);
Theory load_theory(const std::string& path, const Signature& sig);
PartialType load_type(const std::string& path, const Signature& sig);

/// Loads a .mreg file and every structure it lists; relative paths are
/// resolved against the registry file's directory.
Registry load_registry(const std::string& path);

}  // namespace metrilog

#endif
