#pragma once

#include <iosfwd>

#include "s2kit/config.hpp"

namespace s2kit {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitHypothesis = 2, kExitSolver = 3 };

/// Each command writes its files under cfg.out and a short summary to `log`.
int cmd_ineq(const RunConfig& cfg, std::ostream& log);
int cmd_solve(const RunConfig& cfg, std::ostream& log);
int cmd_verify(const RunConfig& cfg, std::ostream& log);
int cmd_identity_scan(const RunConfig& cfg, std::ostream& log);

/// Parses arguments, runs the subcommand and maps errors to exit codes.
int run_cli(int argc, char** argv);

}  // namespace s2kit
