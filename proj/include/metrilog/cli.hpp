#ifndef METRILOG_CLI_HPP
#define METRILOG_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace metrilog::cli {

/// Runs one CLI invocation.  Exit status: 0 definite success/Yes,
/// 1 definite No/violation, 2 Unknown, 3 usage, parse or precondition error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace metrilog::cli

#endif
