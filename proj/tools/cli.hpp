#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace axfi::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kUsage = 2,
  kSchema = 3,
  kDomain = 4,
  kArgument = 5,
  kResource = 6,
  kMethod = 7,
  kIo = 8,
  kInternal = 9,
};

/// Runs one command line (without the program name). Reports go to `out`,
/// structured errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace axfi::cli
