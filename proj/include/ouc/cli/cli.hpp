#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ouc::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kConfigError = 2,
  kSynthesisFailure = 3,
  kInstability = 4,
};

/// Entry point of the `oucroll` tool; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ouc::cli
