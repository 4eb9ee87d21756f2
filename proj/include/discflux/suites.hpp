#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace discflux {

/// One measured quantity against its threshold.
struct Check {
  std::string suite;
  std::string label;
  double measured = 0.0;
  double threshold = 0.0;
  /// "<=" or ">".
  std::string relation = "<=";
  bool pass = false;
};

/// example1, example2, periodic
std::vector<std::string> suite_names();

/// Bundled scenario text used by a suite ("example1_largest",
/// "example1_smallest", "example2", "periodic").
std::string bundled_config(const std::string& name);
std::vector<std::string> bundled_config_names();

/// Runs a suite ("all" runs every suite); the independent solves inside
/// run on `jobs` threads. Throws std::invalid_argument for an unknown name.
std::vector<Check> run_suite(const std::string& name, std::size_t jobs = 1);

}  // namespace discflux
