#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace modspec {

inline constexpr int kReportSchemaVersion = 1;

/// Runs one CLI invocation. `args` excludes the program name. The JSON report
/// goes to `out`, the human summary to `err`. Returns the exit code:
/// 0 ok, 2 violation, 1 usage or data error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace modspec
