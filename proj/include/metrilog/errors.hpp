#ifndef METRILOG_ERRORS_HPP
#define METRILOG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace metrilog {

struct MetrilogError : std::runtime_error {
  explicit MetrilogError(const std::string& msg) : std::runtime_error(msg) {}
};

// Lexical/syntactic/static errors in source documents, with position info.
struct ParseError : MetrilogError {
  ParseError(std::string file, int line, int col, const std::string& msg)
      : MetrilogError(format(file, line, col, msg)), file(std::move(file)), line(line), col(col), message(msg) {}

  static std::string format(const std::string& file, int line, int col, const std::string& msg) {
    std::string out;
    if (!file.empty()) out += file + ":";
    out += std::to_string(line) + ":" + std::to_string(col) + ": " + msg;
    return out;
  }

  std::string file;
  int line;
  int col;
  std::string message;
};

// Violated preconditions of semantic operations (unbound variable, unknown
// symbol, arity mismatch discovered after parsing, ...).
struct EvalError : MetrilogError {
  explicit EvalError(const std::string& msg) : MetrilogError(msg) {}
};

// Requested construction has no computable representation.
struct NotComputableError : MetrilogError {
  explicit NotComputableError(const std::string& msg) : MetrilogError(msg) {}
};

}  // namespace metrilog

#endif
