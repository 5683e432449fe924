#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace subfourier::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kRootAbsent = 2,
  kUsage = 64,
  kGrid = 65,
  kNumeric = 70,
};

/// Runs one invocation. args excludes the program name, e.g.
/// {"report", "--state", "cat", "--alpha", "2"}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// %.17g, the form every number in CSV output is written in.
std::string format_double(double v);

}  // namespace subfourier::cli
