#pragma once

#include <string>
#include <vector>

namespace discflux {

/// Exit statuses of run_command.
enum ExitStatus : int {
  kExitOk = 0,
  kExitCheckFailed = 1,  // verify/convergence thresholds not met
  kExitError = 2,        // bad flags, config, IO or solver errors
};

/// Entry point of the discflux tool:
///   parametrize | solve | extremal | verify | convergence
int run_command(int argc, const char* const* argv);
int run_command(const std::vector<std::string>& args);

}  // namespace discflux
