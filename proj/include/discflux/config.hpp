#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "discflux/extremal_driver.hpp"
#include "discflux/flux_model.hpp"
#include "discflux/fv_scheme.hpp"
#include "discflux/oracles.hpp"
#include "discflux/parametrizer.hpp"

namespace discflux {

/// Syntax errors carry a 1-based line and column; semantic errors carry the
/// dotted field path (line/column 0).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, std::size_t line, std::size_t column,
              std::string path = {});
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& path() const { return path_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string path_;
};

struct PieceTable {
  std::vector<double> breakpoints;
  std::vector<double> values;  // row major, dimension per breakpoint
};

struct FluxConfig {
  /// heaviside | indicator | burgers | linear | custom
  std::string preset;
  StateRange state_range;
  double point = 1.0;        // heaviside value at the jump
  std::size_t samples = 401; // burgers
  double speed = 1.0;        // linear
  std::size_t dimension = 1; // custom
  std::vector<JumpPoint> jumps;
  std::vector<PieceTable> pieces;
};

struct DomainConfig {
  double x_lo = 0.0;
  double x_hi = 1.0;
  std::size_t cells = 0;
  bool periodic = false;
  /// Ghost values; default to the initial data at the domain ends.
  std::optional<double> left;
  std::optional<double> right;
};

struct InitialConfig {
  /// example1 | example2 | heaviside_riemann | sine | constant | custom_table
  std::string preset;
  double left = 0.0;
  double right = 1.0;
  double location = 0.0;
  double mean = 0.5;
  double amplitude = 0.4;
  double wavenumber = 1.0;
  double value = 0.0;
  std::vector<double> x;
  std::vector<double> u;
};

struct VerifyConfig {
  std::string oracle;
  std::optional<Window> window;
  double threshold = 0.05;
};

struct ScenarioConfig {
  FluxConfig flux;
  WeightAssignment weights;  // empty: h_k = 2^-k
  double theta = 0.5;
  double r = 64.0;
  DomainConfig domain;
  InitialConfig initial;
  std::vector<double> snapshots;
  double t_end = 1.0;
  SchemeParams scheme;
  ExtremalParams extremal;  // scheme/times/weights/theta mirrored in
  std::optional<VerifyConfig> verify;
};

ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);

/// Pieces of the scenario.
JumpFlux make_flux(const ScenarioConfig& c);
std::function<double(double)> initial_function(const InitialConfig& c);
GridSolution make_initial(const ScenarioConfig& c);
Parametrization make_parametrization(const ScenarioConfig& c);

/// Scalar flux handed to the solver: the sampled flux itself when it has
/// no jumps, otherwise phi_r at the configured r.
PLFunction solver_flux(const ScenarioConfig& c);
/// One solve of the scenario; snapshots in time order ending at t_end.
std::vector<GridSolution> solve_scenario(const ScenarioConfig& c);

/// 64-bit FNV-1a of the raw config text, as 16 hex digits.
std::string config_hash(const std::string& text);

}  // namespace discflux
