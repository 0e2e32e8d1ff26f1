#ifndef BICKLEY_TOOLS_CLI_HPP
#define BICKLEY_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace bickley::cli {

enum ExitCode : int {
  kExitPass = 0,
  kExitInternal = 1,
  kExitUsage = 2,
  kExitConvergence = 3,
  kExitVerification = 4,
};

/// "start:stop:step" with step > 0 and stop >= start; inclusive of stop up
/// to rounding. Throws DomainError on malformed input.
std::vector<double> parse_range(const std::string& text);

/// "start:stop:n", n >= 1 log-spaced points. Throws DomainError.
std::vector<double> parse_log_range(const std::string& text);

/// %.17g-style rendering (17 significant digits, trailing zeros dropped)
/// with a '.' decimal point regardless of locale.
std::string format_double(double v);

/// Runs one invocation. args excludes the program name. Normal output goes
/// to out (or to --out PATH), diagnostics to err. Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace bickley::cli

#endif  // BICKLEY_TOOLS_CLI_HPP
