#include <doctest.h>

#include <cmath>
#include <numbers>

#include "discflux/extremal_driver.hpp"
#include "generators.hpp"

using namespace discflux;

namespace {

ExtremalParams quick(double t_end = 0.5) {
  ExtremalParams p;
  p.r0 = 8.0;
  p.t_end = t_end;
  p.max_iterations = 3;
  return p;
}

double diff_l1(const GridSolution& a, const GridSolution& b) {
  double acc = 0.0;
  for (std::size_t j = 0; j < a.cells(); ++j) acc += std::abs(a[j] - b[j]);
  return acc * a.dx();
}

}  // namespace

TEST_CASE("mirror problem") {
  const JumpFlux h = heaviside_flux({-1.0, 1.0});
  const GridSolution u0(0.0, 1.0, {0.25, 0.5}, 0.0, Boundary::constant(0.1, 0.2));
  const auto [m, w0] = mirror_problem(h, u0);
  CHECK(m.eval(0.0, Side::kLeft) == -1.0);
  CHECK(m.eval(0.0, Side::kPoint) == -1.0);
  CHECK(m.eval(0.0, Side::kRight) == 0.0);
  CHECK(w0[0] == -0.25);
  CHECK(w0.boundary().left == -0.1);
  const auto [mm, ww] = mirror_problem(m, w0);
  CHECK(mm == h);
  CHECK(ww.values()[1] == 0.5);
  const auto [bm, bw] = mirror_problem(burgers_flux({-2.0, 2.0}, 5), u0);
  CHECK(bm.eval(1.0, Side::kPoint) == -0.5);
}

TEST_CASE("constant data stays constant") {
  const JumpFlux h = heaviside_flux({-2.0, 2.0});
  // A constant sitting on the jump is only recovered as r grows: the far
  // field feeds the ramp of width theta h / r.
  for (double c : {-0.5, 0.3, 0.7}) {
    const GridSolution u0(-1.0, 1.0, std::vector<double>(40, c), 0.0,
                          Boundary::constant(c, c));
    const auto hi = solve_largest(h, u0, quick());
    const auto lo = solve_smallest(h, u0, quick());
    for (std::size_t j = 0; j < 40; ++j) {
      const double x = u0.x_center(j);
      if (!hi.window.contains(x)) continue;
      CHECK(hi.solutions.back()[j] == doctest::Approx(c).epsilon(1e-12));
      CHECK(lo.solutions.back()[j] == doctest::Approx(c).epsilon(1e-12));
    }
  }
}

TEST_CASE("default window is the inner half") {
  const GridSolution u0(-20.0, 20.0, std::vector<double>(4, 0.0), 0.0,
                        Boundary::constant(0, 0));
  const Window w = analysis_window(u0, {});
  CHECK(w.lo == -10.0);
  CHECK(w.hi == 10.0);
  const GridSolution p(0.0, 1.0, std::vector<double>(4, 0.0));
  CHECK(analysis_window(p, {}).lo == 0.0);
}

TEST_CASE("example 1 on a small grid: ordering and oracles") {
  const JumpFlux h = heaviside_flux({-2.0, 2.0});
  const auto u0 = GridSolution::from_function(
      [](double x) { return 1 / (1 + x * x); }, -10.0, 10.0, 200,
      Boundary::constant(0, 0));
  auto params = quick(1.0);
  const auto hi = solve_largest(h, u0, params);
  const auto lo = solve_smallest(h, u0, params);
  CHECK(hi.converged);
  CHECK(lo.converged);
  const auto& a = hi.solutions.back();
  const auto& b = lo.solutions.back();
  // Ordering holds on the window; the far fields differ near the ends.
  for (std::size_t j = 0; j < a.cells(); ++j) {
    if (hi.window.contains(a.x_center(j))) CHECK(b[j] <= a[j] + 1e-10);
  }
  CHECK(score(a, example1_largest_field(), hi.window) < 0.05);
  for (double inc : hi.increments) CHECK(inc >= 0.0);
  CHECK(hi.increments.back() <= params.tolerance);
  CHECK(hi.r_values.front() == 8.0);
  CHECK(hi.d_values.front() == u0.max() + 0.5);
}

TEST_CASE("periodic data: largest equals smallest, mean conserved") {
  const JumpFlux h = heaviside_flux({-2.0, 2.0});
  gen::Rng rng(61);
  for (int trial = 0; trial < 5; ++trial) {
    const GridSolution u0(0.0, 1.0, gen::random_field(rng, 64, -0.5, 0.5));
    auto params = quick(0.3);
    params.r0 = 2.0;
    const auto hi = solve_largest(h, u0, params);
    const auto lo = solve_smallest(h, u0, params);
    const double tv = [&] {
      double acc = 0.0;
      for (std::size_t j = 0; j < 64; ++j) acc += std::abs(u0[(j + 1) % 64] - u0[j]);
      return acc;
    }();
    CHECK(diff_l1(hi.solutions.back(), lo.solutions.back()) <=
          3 * u0.dx() * tv + 1e-12);
    CHECK(std::abs(hi.solutions.back().mass() - u0.mass()) <= 1e-10);
    CHECK(std::abs(lo.solutions.back().mass() - u0.mass()) <= 1e-10);
  }
}

TEST_CASE("stability in the initial data") {
  const JumpFlux h = heaviside_flux({-2.0, 2.0});
  gen::Rng rng(62);
  for (int trial = 0; trial < 5; ++trial) {
    const GridSolution a(0.0, 1.0, gen::random_field(rng, 50, -0.5, 0.5));
    const GridSolution b(0.0, 1.0, gen::random_field(rng, 50, -0.5, 0.5));
    auto params = quick(0.3);
    params.r0 = 2.0;
    const auto ua = solve_largest(h, a, params).solutions.back();
    const auto ub = solve_largest(h, b, params).solutions.back();
    double before = 0.0, after = 0.0;
    for (std::size_t j = 0; j < 50; ++j) {
      before += std::max(a[j] - b[j], 0.0) * a.dx();
      after += std::max(ua[j] - ub[j], 0.0) * a.dx();
    }
    CHECK(after <= before + 1e-12);
  }
}

TEST_CASE("errors and non-convergence") {
  const JumpFlux h = heaviside_flux({-1.0, 1.0});
  const GridSolution u0(-1.0, 1.0, std::vector<double>(20, 0.8), 0.0,
                        Boundary::constant(0.8, 0.8));
  CHECK_THROWS_AS(solve_largest(h, u0, quick()), std::invalid_argument);

  const JumpFlux wide = heaviside_flux({-2.0, 2.0});
  auto one = quick();
  one.max_iterations = 1;
  const auto r = solve_largest(wide, u0, one);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 1);
  CHECK(r.solutions.size() == 1);

  auto strict = quick();
  strict.slack = -1.0;
  CHECK_THROWS_AS(solve_largest(wide, u0, strict), MonotonicityError);
}
