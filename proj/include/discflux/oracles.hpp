#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "discflux/fv_scheme.hpp"

namespace discflux {

/// Closed-form field (t, x) -> u, valid for t in [t_min, t_max].
struct OracleField {
  std::string name;
  std::function<double(double, double)> eval;
  double t_min = 0.0;
  double t_max = std::numeric_limits<double>::infinity();

  bool valid_at(double t) const { return t >= t_min && t <= t_max; }
  double operator()(double t, double x) const { return eval(t, x); }
};

struct Window {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
};

// Heaviside flux, u0 = 1 / (1 + x^2).

/// Stationary largest solution 1 / (1 + x^2).
double example1_largest(double t, double x);
/// Front position tan(t - pi/2) of the smallest solution; +inf for t >= pi.
double example1_front(double t);
/// u0(x) to the right of the front, 0 to its left and for t >= pi.
double example1_smallest(double t, double x);
/// (pi - t)^+, the total mass of example1_smallest at time t.
double example1_smallest_mass(double t);
/// Shock speed (1 + x^2)(1 - v) of a front at x whose left state v.
double example1_front_speed(double x, double v);

/// Indicator flux, Riemann data H(x): the stationary H(x), with H(0) = 1.
double example2_solution(double t, double x);

OracleField example1_largest_field();
OracleField example1_smallest_field();
OracleField example2_field();
/// Registry lookup by name ("example1_largest", "example1_smallest",
/// "example2"); throws std::invalid_argument for an unknown name.
OracleField oracle_by_name(const std::string& name);
std::vector<std::string> oracle_names();

/// sum_j |u_j - oracle(t, x_j)| dx over cells whose center lies in the
/// window. Throws std::invalid_argument if the window is empty or leaves
/// the domain, or the oracle is not valid at s.time().
double score(const GridSolution& s, const OracleField& oracle,
             const Window& window);

/// sum_j u_j dx over cells whose center lies in the window.
double window_mass(const GridSolution& s, const Window& window);

/// Leftmost x in the window at which u(x) / reference(x) rises through
/// `level`, linearly interpolated between cell centers. NaN when there is
/// no crossing.
double detect_front(const GridSolution& s,
                    const std::function<double(double)>& reference,
                    double level, const Window& window);

/// Separable test function psi(t) omega(x) with derivatives.
struct TestFunction {
  std::function<double(double)> psi;
  std::function<double(double)> dpsi;
  std::function<double(double)> omega;
  std::function<double(double)> domega;
};

/// psi = (2/T) sin^2(pi t / T) on [0, T] (unit integral, zero at both
/// ends), omega = cos^2(pi (x - center) / (2 halfwidth)) on the support.
TestFunction bump_test_function(double horizon, double center,
                                double halfwidth);

/// Weak-form residual int int (u f_t + zeta f_x) dx dt for snapshots of u
/// on one grid, with zeta_j = flux(u_j) by default. Trapezoid rule in
/// time over the snapshots, midpoint rule in space. The initial-data term
/// vanishes because psi(0) = 0.
double weak_residual(const std::vector<GridSolution>& snapshots,
                     const std::function<double(double)>& flux,
                     const TestFunction& f);

}  // namespace discflux
