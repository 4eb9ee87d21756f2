#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "discflux/oracles.hpp"

using namespace discflux;
using std::numbers::pi;

TEST_CASE("example 1 largest") {
  for (double t : {0.0, 1.0, 7.5}) {
    CHECK(example1_largest(t, 0.0) == 1.0);
    CHECK(example1_largest(t, 1.0) == 0.5);
    CHECK(example1_largest(t, -1.0) == 0.5);
  }
}

TEST_CASE("example 1 smallest") {
  CHECK(example1_smallest(pi / 2, 1.0) == 0.5);
  CHECK(example1_smallest(pi, 0.3) == 0.0);
  CHECK(example1_smallest(4.0, -2.0) == 0.0);
  CHECK(example1_smallest(2.0, 0.0) == 0.0);
  CHECK(example1_front(2.0) == doctest::Approx(0.4577).epsilon(1e-4));
  CHECK(example1_smallest(2.0, 0.5) == example1_largest(2.0, 0.5));
  CHECK(example1_smallest(0.5, -5.0) == 0.0);
  CHECK(example1_smallest(0.5, -1.0) == example1_largest(0.5, -1.0));
}

TEST_CASE("example 1 smallest mass") {
  CHECK(example1_smallest_mass(0.0) == pi);
  CHECK(example1_smallest_mass(pi) == 0.0);
  CHECK(example1_smallest_mass(5.0) == 0.0);
  CHECK(example1_smallest_mass(1.0) == doctest::Approx(2.1416).epsilon(1e-4));
}

TEST_CASE("mass identity by quadrature") {
  // x = tan(s) maps R to (-pi/2, pi/2) with dx = (1 + x^2) ds; Simpson on
  // the piece to the right of the front.
  for (double t : {0.5, 1.0, 2.0, 3.0}) {
    const double a = std::atan(example1_front(t));
    const double b = pi / 2;
    const int n = 20000;
    const double h = (b - a) / n;
    auto f = [&](double s) {
      const double x = std::tan(s);
      return example1_smallest(t, x) * (1 + x * x);
    };
    double acc = f(a + 1e-15) + f(b);
    for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    CHECK(std::abs(acc * h / 3 - example1_smallest_mass(t)) <= 1e-6);
  }
}

TEST_CASE("front crossing sits at tan(t - pi/2)") {
  for (double t : {1.7, 2.0, 2.5, 3.1}) {
    const double xf = example1_front(t);
    const double eps = 1e-9 * (1 + std::abs(xf));
    CHECK(example1_smallest(t, xf - eps) / example1_largest(t, xf - eps) < 0.5);
    CHECK(example1_smallest(t, xf + eps) / example1_largest(t, xf + eps) > 0.5);
  }
}

TEST_CASE("front speed matches the v = 0 branch") {
  for (double t : {0.3, 1.0, 2.0, 3.0}) {
    const double h = 1e-6;
    const double slope = (example1_front(t + h) - example1_front(t - h)) / (2 * h);
    CHECK(slope == doctest::Approx(example1_front_speed(example1_front(t), 0.0))
                       .epsilon(1e-6));
  }
}

TEST_CASE("smallest is below largest") {
  for (double t = 0.05; t < 5.0; t += 0.25) {
    for (double x = -30.0; x <= 30.0; x += 0.37) {
      CHECK(example1_smallest(t, x) <= example1_largest(t, x));
    }
  }
}

TEST_CASE("example 2") {
  CHECK(example2_solution(1.0, 1.0) == 1.0);
  CHECK(example2_solution(1.0, -1.0) == 0.0);
  CHECK(example2_solution(1.0, 0.0) == 1.0);
}

TEST_CASE("registry") {
  for (const auto& name : oracle_names()) CHECK(oracle_by_name(name).name == name);
  CHECK_THROWS_AS(oracle_by_name("nope"), std::invalid_argument);
}

TEST_CASE("score") {
  const OracleField zero{"zero", [](double, double) { return 0.0; }};
  const GridSolution ones(-1.0, 1.0, std::vector<double>(100, 1.0));
  CHECK(score(ones, zero, {-1.0, 1.0}) == doctest::Approx(2.0));
  const auto sampled = GridSolution(-2.0, 2.0, [] {
    std::vector<double> u(40);
    for (std::size_t j = 0; j < u.size(); ++j) {
      u[j] = example1_largest(0, -2.0 + (j + 0.5) * 0.1);
    }
    return u;
  }());
  CHECK(score(sampled, example1_largest_field(), {-2.0, 2.0}) == 0.0);
  CHECK_THROWS_AS(score(ones, zero, {-2.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(score(ones, zero, {0.5, 0.5}), std::invalid_argument);
  OracleField late = zero;
  late.t_min = 1.0;
  CHECK_THROWS_AS(score(ones, late, {-1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("front detection") {
  std::vector<double> u(100);
  for (std::size_t j = 0; j < u.size(); ++j) u[j] = j < 60 ? 0.0 : 2.0;
  const GridSolution s(0.0, 1.0, u);
  const double x = detect_front(s, [](double) { return 2.0; }, 0.5, {0.0, 1.0});
  CHECK(x == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(std::isnan(detect_front(s, [](double) { return 100.0; }, 0.5, {0.0, 1.0})));
}

TEST_CASE("weak residual separates the two flux choices") {
  const double T = 1.0;
  const auto f = bump_test_function(T, 0.0, 1.0);
  std::vector<GridSolution> snaps;
  for (int n = 0; n <= 100; ++n) {
    snaps.push_back(GridSolution::from_function(
        [](double x) { return x >= 0 ? 1.0 : 0.0; }, -2.0, 2.0, 400)
                        .with_values(std::vector<double>(400), n * T / 100));
  }
  for (auto& s : snaps) {
    std::vector<double> u(400);
    for (std::size_t j = 0; j < u.size(); ++j) u[j] = s.x_center(j) >= 0 ? 1.0 : 0.0;
    s = s.with_values(u, s.time());
  }
  auto chi0 = [](double u) { return u == 0.0 ? 1.0 : 0.0; };
  auto zero = [](double) { return 0.0; };
  CHECK(std::abs(weak_residual(snaps, chi0, f)) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(std::abs(weak_residual(snaps, zero, f)) <= 1e-12);
}
