#ifndef QLOPT_CLI_CLI_HPP
#define QLOPT_CLI_CLI_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qlopt/rational.hpp"

namespace qlopt::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitParse = 2,
  kExitIo = 3,
  kExitCap = 4,
  kExitVerification = 5,
  kExitInvalidArgument = 6,
};

/// Runs one command line (program name excluded) and returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Exact value of a decimal literal such as "0.975". Throws
/// std::invalid_argument.
Ratio parse_decimal_ratio(std::string_view text);

}  // namespace qlopt::cli

#endif  // QLOPT_CLI_CLI_HPP
