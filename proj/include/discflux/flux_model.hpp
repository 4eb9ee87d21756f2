#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "discflux/pl_function.hpp"

namespace discflux {

enum class Side { kLeft, kPoint, kRight };

struct StateRange {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double u) const { return u >= lo && u <= hi; }
  bool operator==(const StateRange&) const = default;
};

/// A discontinuity u_k of the flux with its one-sided limits and point value.
struct JumpPoint {
  double location = 0.0;
  std::vector<double> left;
  std::vector<double> point;
  std::vector<double> right;

  /// True when left, point and right all coincide.
  bool degenerate() const;
  bool operator==(const JumpPoint&) const = default;
};

/// Jump-continuous flux u -> R^n on a declared state range with finitely
/// many discontinuities. Between consecutive jumps (and out to the range
/// ends) the flux is a sampled piecewise-linear piece whose end values are
/// the one-sided limits of the adjacent jumps.
class JumpFlux {
 public:
  std::size_t dimension() const { return dimension_; }
  const StateRange& state_range() const { return range_; }
  const std::vector<JumpPoint>& jumps() const { return jumps_; }
  /// pieces()[k] covers [edge_k, edge_{k+1}] with edges
  /// {lo, u_1, ..., u_K, hi}.
  const std::vector<PLFunction>& pieces() const { return pieces_; }
  /// Degenerate jumps dropped during construction.
  const std::vector<std::string>& warnings() const { return warnings_; }

  std::vector<double> eval_sided(double u, Side side) const;
  double eval(double u, Side side, std::size_t component = 0) const;
  std::vector<double> discontinuity_set() const;

  bool operator==(const JumpFlux&) const = default;

 private:
  friend JumpFlux make_jump_flux(std::size_t, StateRange,
                                 std::vector<JumpPoint>,
                                 std::vector<PLFunction>);
  std::size_t piece_index(double u) const;

  std::size_t dimension_ = 1;
  StateRange range_;
  std::vector<JumpPoint> jumps_;
  std::vector<PLFunction> pieces_;
  std::vector<std::string> warnings_;
};

/// Validates and assembles a JumpFlux. Throws std::invalid_argument on
/// unsorted or duplicate jump locations, jumps outside the open state range,
/// dimension mismatches, pieces that do not span their gap exactly, or
/// piece end values that differ from the declared one-sided limits.
JumpFlux make_jump_flux(std::size_t dimension, StateRange range,
                        std::vector<JumpPoint> jumps,
                        std::vector<PLFunction> pieces);

// Ready-made fluxes.

/// H(u): 0 below the jump at 0, 1 above, value `point_value` at 0.
JumpFlux heaviside_flux(StateRange range, double point_value = 1.0);
/// Indicator of the singleton {0}.
JumpFlux indicator_flux(StateRange range);
/// Continuous scalar flux sampled at `samples` uniform nodes (no jumps).
JumpFlux sampled_flux(const std::function<double(double)>& f, StateRange range,
                      std::size_t samples);
JumpFlux burgers_flux(StateRange range, std::size_t samples);
JumpFlux linear_flux(StateRange range, double speed);

/// -f(-u): jump locations negated, left/right limits swapped and negated.
JumpFlux mirror_flux(const JumpFlux& f);

}  // namespace discflux
