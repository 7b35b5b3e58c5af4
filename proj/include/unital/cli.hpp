#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace unital::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kSuccess = 0,
  kVerdictNegative = 1,  // an --assert-* check failed, or a campaign found anomalies
  kInputError = 2,
};

/// Runs one command line (without the program name). Payload JSON goes to
/// `out` (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace unital::cli
