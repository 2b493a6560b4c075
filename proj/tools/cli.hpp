#ifndef AEFF_TOOLS_CLI_HPP
#define AEFF_TOOLS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace aeff::cli {

enum ExitCode : int {
  kOk = 0,
  kTypeFailure = 1,
  kNotNormalising = 2,
  kAuditViolation = 3,
  kUsage = 64,
};

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aeff::cli

#endif  // AEFF_TOOLS_CLI_HPP
