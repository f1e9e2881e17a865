#pragma once

#include <iosfwd>

#include "slinv/lab/config.hpp"

namespace slinv::lab {

enum ExitStatus : int { exit_ok = 0, exit_input = 2, exit_numerical = 3 };

/// Reads SOLVER_LOG (error, info or debug) and configures the stderr logger.
void configure_logging();

/// Validates the config, runs the command and writes its files under
/// cfg.out_dir. The human-readable summary also goes to `summary`.
int run(const ExperimentConfig& cfg, std::ostream& summary);

}  // namespace slinv::lab
