#include "discflux/oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace discflux {

using std::numbers::pi;

double example1_largest(double /*t*/, double x) { return 1.0 / (1.0 + x * x); }

double example1_front(double t) {
  if (t >= pi) return std::numeric_limits<double>::infinity();
  return std::tan(t - pi / 2);
}

double example1_smallest(double t, double x) {
  if (t >= pi) return 0.0;
  return x > example1_front(t) ? example1_largest(t, x) : 0.0;
}

double example1_smallest_mass(double t) { return std::max(pi - t, 0.0); }

double example1_front_speed(double x, double v) { return (1 + x * x) * (1 - v); }

double example2_solution(double /*t*/, double x) { return x >= 0.0 ? 1.0 : 0.0; }

OracleField example1_largest_field() {
  return {"example1_largest", example1_largest};
}

OracleField example1_smallest_field() {
  return {"example1_smallest", example1_smallest};
}

OracleField example2_field() { return {"example2", example2_solution}; }

std::vector<std::string> oracle_names() {
  return {"example1_largest", "example1_smallest", "example2"};
}

OracleField oracle_by_name(const std::string& name) {
  if (name == "example1_largest") return example1_largest_field();
  if (name == "example1_smallest") return example1_smallest_field();
  if (name == "example2") return example2_field();
  throw std::invalid_argument("unknown oracle '" + name + "'");
}

namespace {

void check_window(const GridSolution& s, const Window& w) {
  if (!(w.hi > w.lo)) throw std::invalid_argument("window: need hi > lo");
  if (w.lo < s.x_lo() || w.hi > s.x_hi()) {
    throw std::invalid_argument("window [" + std::to_string(w.lo) + ", " +
                                std::to_string(w.hi) + "] leaves the domain");
  }
}

}  // namespace

double score(const GridSolution& s, const OracleField& oracle,
             const Window& window) {
  check_window(s, window);
  if (!oracle.valid_at(s.time())) {
    throw std::invalid_argument("oracle " + oracle.name +
                                " not valid at t = " + std::to_string(s.time()));
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < s.cells(); ++j) {
    const double x = s.x_center(j);
    if (window.contains(x)) acc += std::abs(s[j] - oracle(s.time(), x));
  }
  return acc * s.dx();
}

double window_mass(const GridSolution& s, const Window& window) {
  check_window(s, window);
  double acc = 0.0;
  for (std::size_t j = 0; j < s.cells(); ++j) {
    if (window.contains(s.x_center(j))) acc += s[j];
  }
  return acc * s.dx();
}

double detect_front(const GridSolution& s,
                    const std::function<double(double)>& reference,
                    double level, const Window& window) {
  check_window(s, window);
  double prev_x = std::numeric_limits<double>::quiet_NaN();
  double prev_r = 0.0;
  for (std::size_t j = 0; j < s.cells(); ++j) {
    const double x = s.x_center(j);
    if (!window.contains(x)) continue;
    const double r = s[j] / reference(x);
    if (r >= level) {
      if (std::isnan(prev_x)) return x;
      return prev_x + (x - prev_x) * (level - prev_r) / (r - prev_r);
    }
    prev_x = x;
    prev_r = r;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

TestFunction bump_test_function(double horizon, double center,
                                double halfwidth) {
  if (!(horizon > 0.0) || !(halfwidth > 0.0)) {
    throw std::invalid_argument("test function: need T > 0 and halfwidth > 0");
  }
  const double T = horizon;
  const double k = pi / (2 * halfwidth);
  TestFunction f;
  f.psi = [T](double t) {
    if (t <= 0 || t >= T) return 0.0;
    const double s = std::sin(pi * t / T);
    return 2.0 / T * s * s;
  };
  f.dpsi = [T](double t) {
    if (t <= 0 || t >= T) return 0.0;
    return 2.0 * pi / (T * T) * std::sin(2 * pi * t / T);
  };
  f.omega = [=](double x) {
    const double y = x - center;
    if (std::abs(y) >= halfwidth) return 0.0;
    const double c = std::cos(k * y);
    return c * c;
  };
  f.domega = [=](double x) {
    const double y = x - center;
    if (std::abs(y) >= halfwidth) return 0.0;
    return -k * std::sin(2 * k * y);
  };
  return f;
}

double weak_residual(const std::vector<GridSolution>& snapshots,
                     const std::function<double(double)>& flux,
                     const TestFunction& f) {
  if (snapshots.size() < 2) {
    throw std::invalid_argument("weak_residual: need at least two snapshots");
  }
  const GridSolution& first = snapshots.front();
  auto integrand = [&](const GridSolution& s) {
    const double t = s.time();
    const double dpsi = f.dpsi(t), psi = f.psi(t);
    double acc = 0.0;
    for (std::size_t j = 0; j < s.cells(); ++j) {
      const double x = s.x_center(j);
      acc += dpsi * s[j] * f.omega(x) + psi * flux(s[j]) * f.domega(x);
    }
    return acc * s.dx();
  };
  double total = 0.0;
  double prev = integrand(first);
  for (std::size_t n = 1; n < snapshots.size(); ++n) {
    const GridSolution& s = snapshots[n];
    if (!s.same_grid(first)) {
      throw std::invalid_argument("weak_residual: snapshots on different grids");
    }
    const double dt = s.time() - snapshots[n - 1].time();
    if (!(dt > 0)) {
      throw std::invalid_argument("weak_residual: snapshot times must increase");
    }
    const double cur = integrand(s);
    total += 0.5 * dt * (prev + cur);
    prev = cur;
  }
  return total;
}

}  // namespace discflux
