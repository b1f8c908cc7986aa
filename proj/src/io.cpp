#include "metrilog/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace metrilog {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MetrilogError("cannot open file '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw MetrilogError("cannot write file '" + path + "'");
  out << content;
}

Signature load_signature(const std::string& path) { return parse_signature(read_file(path), path); }

MetricStructure load_structure(const std::string& path) { return parse_structure(read_file(path), path); }

FormulaPtr load_formula(const std::string& path, const Signature& sig) {
  return parse_formula(read_file(path), sig, path);
}

Theory load_theory(const std::string& path, const Signature& sig) { return parse_theory(read_file(path), sig, path); }

PartialType load_type(const std::string& path, const Signature& sig) {
  PartialType type = parse_type(read_file(path), sig, path);
  type.check_well_formed();
  return type;
}

Registry load_registry(const std::string& path) {
  RegistryFile file = parse_registry_file(read_file(path), path);
  if (file.paths.empty()) throw MetrilogError("registry '" + path + "' lists no structures");
  std::filesystem::path base = std::filesystem::path(path).parent_path();
  Registry reg;
  for (const std::string& entry : file.paths) {
    std::filesystem::path p(entry);
    if (p.is_relative()) p = base / p;
    reg.structures.push_back(load_structure(p.string()));
  }
  reg.check_common_signature();
  return reg;
}

}  // namespace metrilog
