#pragma once

#include <ostream>

namespace compsem {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  /// Check failed, fit refuted, refutation expectation not met, index out
  /// of range, or replay did not reproduce.
  kExitNegative = 1,
  /// Invalid spec, bundle or command line.
  kExitInvalid = 2,
  /// I/O failure or resource bound exceeded.
  kExitResource = 3,
};

/// Entry point of the `compsem` tool; argv[0] is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace compsem
