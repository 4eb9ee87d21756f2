#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "discflux/flux_model.hpp"
#include "discflux/fv_scheme.hpp"
#include "discflux/oracles.hpp"
#include "discflux/parametrizer.hpp"

namespace discflux {

/// Coupled schedule for iteration m = 1, 2, ...:
///   far-field value d_m = d + 2^-m (d = max of the initial cells),
///   regularization r_m = r0 * growth^(m-1).
/// The truncation radius is the computational domain: outside it the data
/// is d_m, held in the constant boundary ghosts. Periodic data has no far
/// field and only r_m changes.
struct ExtremalParams {
  double r0 = 64.0;
  double growth = 2.0;
  /// Stop when the L1 increment on the window drops to this value.
  double tolerance = 1e-3;
  int max_iterations = 6;
  /// Defaults to the inner half of the domain (all of it when periodic).
  std::optional<Window> window;
  /// Per-cell slack of the monotonicity check.
  double slack = 1e-10;
  bool check_monotone = true;
  /// Empty means h_k = 2^-k.
  WeightAssignment weights;
  double theta = 0.5;
  SchemeParams scheme;
  double t_end = 1.0;
  std::vector<double> times;
};

struct ExtremalResult {
  /// Last iterate at every requested time, ending with t_end.
  std::vector<GridSolution> solutions;
  int iterations = 0;
  /// L1 distance on the window between successive iterates (max over times).
  std::vector<double> increments;
  bool converged = false;
  std::vector<double> d_values;
  std::vector<double> r_values;
  /// Largest pointwise rise between successive iterates; diagnostic only.
  double max_rise = 0.0;
  Window window;
};

/// Raised when an iterate rises above its comparison run by more than the
/// slack.
class MonotonicityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// -f(-u) with data -u0.
std::pair<JumpFlux, GridSolution> mirror_problem(const JumpFlux& f,
                                                 const GridSolution& u0);

ExtremalResult solve_largest(const JumpFlux& f, const GridSolution& u0,
                             const ExtremalParams& params);
ExtremalResult solve_largest(const Parametrization& p, const GridSolution& u0,
                             const ExtremalParams& params);

/// Negated largest solution of the mirror problem. The mirror flux is
/// parametrized by reflecting (b, g), so the two solves use reflected
/// regularizations.
ExtremalResult solve_smallest(const JumpFlux& f, const GridSolution& u0,
                              const ExtremalParams& params);

/// Window used by the driver for this grid.
Window analysis_window(const GridSolution& u0, const ExtremalParams& params);

}  // namespace discflux
