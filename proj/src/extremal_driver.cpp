#include "discflux/extremal_driver.hpp"

#include <cmath>
#include <string>

#include "discflux/regularized_flux.hpp"

namespace discflux {

namespace {

GridSolution negated(const GridSolution& s) {
  std::vector<double> u(s.values().begin(), s.values().end());
  for (double& v : u) v = -v;
  Boundary b = s.boundary();
  b.left = -b.left;
  b.right = -b.right;
  return GridSolution(s.x_lo(), s.x_hi(), std::move(u), s.time(), b);
}

double window_l1(const GridSolution& a, const GridSolution& b,
                 const Window& w) {
  double acc = 0.0;
  for (std::size_t j = 0; j < a.cells(); ++j) {
    if (w.contains(a.x_center(j))) acc += std::abs(a[j] - b[j]);
  }
  return acc * a.dx();
}

/// max_j (a_j - b_j) on the window.
double window_rise(const GridSolution& a, const GridSolution& b,
                   const Window& w) {
  double worst = -INFINITY;
  for (std::size_t j = 0; j < a.cells(); ++j) {
    if (w.contains(a.x_center(j))) worst = std::max(worst, a[j] - b[j]);
  }
  return worst;
}

std::vector<GridSolution> solve_once(const Parametrization& p,
                                     const GridSolution& u0, double d,
                                     double r, const ExtremalParams& params) {
  const RegularizedFlux rf = regularize(p, r);
  GridSolution s0 = u0.boundary().is_periodic()
                        ? u0
                        : u0.with_boundary(Boundary::constant(d, d));
  return run(s0, rf.scalar_flux(), params.scheme, params.t_end, params.times);
}

}  // namespace

std::pair<JumpFlux, GridSolution> mirror_problem(const JumpFlux& f,
                                                 const GridSolution& u0) {
  return {mirror_flux(f), negated(u0)};
}

Window analysis_window(const GridSolution& u0, const ExtremalParams& params) {
  if (params.window) return *params.window;
  if (u0.boundary().is_periodic()) return {u0.x_lo(), u0.x_hi()};
  const double q = 0.25 * (u0.x_hi() - u0.x_lo());
  return {u0.x_lo() + q, u0.x_hi() - q};
}

ExtremalResult solve_largest(const JumpFlux& f, const GridSolution& u0,
                             const ExtremalParams& params) {
  const Parametrization p =
      params.weights.h.empty()
          ? build_parametrization(f, params.theta)
          : build_parametrization(f, params.weights, params.theta);
  return solve_largest(p, u0, params);
}

ExtremalResult solve_largest(const Parametrization& p, const GridSolution& u0,
                             const ExtremalParams& params) {
  if (!(params.r0 >= 1.0) || !(params.growth > 1.0)) {
    throw std::invalid_argument("extremal: need r0 >= 1 and growth > 1");
  }
  if (!(params.tolerance > 0.0) || params.max_iterations < 1) {
    throw std::invalid_argument(
        "extremal: need tolerance > 0 and max_iterations >= 1");
  }
  const StateRange range = p.state_range();
  if (!range.contains(u0.min()) || !range.contains(u0.max())) {
    throw std::invalid_argument("extremal: initial data leaves the state range");
  }
  const bool periodic = u0.boundary().is_periodic();
  const double d = u0.max();
  if (!periodic && !range.contains(d + 0.5)) {
    throw std::invalid_argument("extremal: far-field value d_1 = " +
                                std::to_string(d + 0.5) +
                                " exceeds the state range");
  }

  ExtremalResult result;
  result.window = analysis_window(u0, params);
  const Window& w = result.window;
  if (w.lo < u0.x_lo() || w.hi > u0.x_hi() || !(w.hi > w.lo)) {
    throw std::invalid_argument("extremal: window leaves the domain");
  }

  std::vector<GridSolution> prev;
  double r = params.r0;
  for (int m = 1; m <= params.max_iterations; ++m, r *= params.growth) {
    const double dm = d + std::ldexp(1.0, -m);
    std::vector<GridSolution> cur = solve_once(p, u0, dm, r, params);
    result.d_values.push_back(dm);
    result.r_values.push_back(r);
    result.iterations = m;

    if (!prev.empty()) {
      if (params.check_monotone && !periodic) {
        // Same regularized flux, previous far field: must dominate.
        const double dp = result.d_values[result.d_values.size() - 2];
        const auto upper = solve_once(p, u0, dp, r, params);
        for (std::size_t n = 0; n < cur.size(); ++n) {
          const double rise = window_rise(cur[n], upper[n], w);
          if (rise > params.slack) {
            throw MonotonicityError(
                "extremal: iterate " + std::to_string(m) + " exceeds its " +
                "comparison run by " + std::to_string(rise) + " at t = " +
                std::to_string(cur[n].time()));
          }
        }
      }
      double inc = 0.0;
      for (std::size_t n = 0; n < cur.size(); ++n) {
        inc = std::max(inc, window_l1(cur[n], prev[n], w));
        result.max_rise =
            std::max(result.max_rise, window_rise(cur[n], prev[n], w));
      }
      result.increments.push_back(inc);
      prev = std::move(cur);
      if (inc <= params.tolerance) {
        result.converged = true;
        break;
      }
    } else {
      prev = std::move(cur);
    }
  }
  result.solutions = std::move(prev);
  return result;
}

ExtremalResult solve_smallest(const JumpFlux& f, const GridSolution& u0,
                              const ExtremalParams& params) {
  const Parametrization p =
      params.weights.h.empty()
          ? build_parametrization(f, params.theta)
          : build_parametrization(f, params.weights, params.theta);
  ExtremalParams mirrored = params;
  mirrored.theta = 1.0 - params.theta;
  mirrored.weights.h.assign(p.weights().h.rbegin(), p.weights().h.rend());
  ExtremalResult result =
      solve_largest(mirror_parametrization(p), negated(u0), mirrored);
  for (GridSolution& s : result.solutions) s = negated(s);
  for (double& d : result.d_values) d = -d;
  return result;
}

}  // namespace discflux
