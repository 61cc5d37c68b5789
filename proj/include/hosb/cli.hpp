#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hosb::cli {

/// Exit codes of the hosb tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
/// solve: run finished without reaching the known optimum;
/// oracle: the system A xi = b has no solution.
inline constexpr int kExitNotSolved = 2;
/// oracle: exhaustive search disagrees with the GF(2) count.
inline constexpr int kExitOracleMismatch = 3;

/// Environment variables named kEnvPrefix + FLAG (e.g. HOSB_DT) supply
/// defaults for the corresponding flags.
inline constexpr const char* kEnvPrefix = "HOSB_";

/// Runs the tool with args[0] as the program name. Payloads go to `out`,
/// diagnostics and summaries to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hosb::cli
