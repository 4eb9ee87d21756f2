#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "discflux/pl_function.hpp"
#include "generators.hpp"

using discflux::PLFunction;

TEST_CASE("breakpoints return stored values exactly") {
  PLFunction f({0.0, 0.1, 0.7, 1.0}, {0.3, 1.0 / 3.0, -2.5, 0.2});
  CHECK(f(0.0) == 0.3);
  CHECK(f(0.1) == 1.0 / 3.0);
  CHECK(f(0.7) == -2.5);
  CHECK(f(1.0) == 0.2);
  CHECK(f(0.05) == doctest::Approx((0.3 + 1.0 / 3.0) / 2));
}

TEST_CASE("vector values are row major") {
  PLFunction f({0.0, 1.0}, {1.0, 10.0, 3.0, 30.0}, 2);
  CHECK(f.dimension() == 2);
  CHECK(f.eval(0.5, 0) == 2.0);
  CHECK(f.eval(0.5, 1) == 20.0);
  auto v = f.eval_vector(1.0);
  CHECK(v == std::vector<double>{3.0, 30.0});
}

TEST_CASE("construction rejects bad grids") {
  CHECK_THROWS_AS(PLFunction({0.0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(PLFunction({0.0, 0.0}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(PLFunction({1.0, 0.0}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(PLFunction({0.0, 1.0}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(PLFunction({0.0, NAN}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("extrapolation only when enabled") {
  PLFunction f({0.0, 1.0}, {2.0, 4.0});
  CHECK_THROWS_AS(f(1.5), std::out_of_range);
  PLFunction g({0.0, 1.0}, {2.0, 4.0}, 1, PLFunction::Extrapolation::kConstant);
  CHECK(g(1.5) == 4.0);
  CHECK(g(-3.0) == 2.0);
}

TEST_CASE("segment lookup") {
  PLFunction f({0.0, 1.0, 2.0, 3.0}, {0, 0, 0, 0});
  CHECK(f.segment(0.0) == 0);
  CHECK(f.segment(0.5) == 0);
  CHECK(f.segment(1.0) == 1);
  CHECK(f.segment(3.0) == 2);
}

TEST_CASE("slopes and extrema") {
  PLFunction f({-1.0, 0.0, 2.0}, {1.0, -1.0, 3.0});
  CHECK(f.slope(0) == -2.0);
  CHECK(f.slope(1) == 2.0);
  CHECK(f.max_abs_slope() == 2.0);
  CHECK(f.min_on(-1.0, 2.0) == -1.0);
  CHECK(f.max_on(-0.5, 1.0) == 1.0);
  CHECK(f.min_on(0.5, 1.5) == 0.0);
  CHECK(f.max_on(0.5, 0.5) == 0.0);
}

TEST_CASE("sample_scalar hits both ends exactly") {
  auto f = discflux::sample_scalar([](double x) { return x * x; }, -2.0, 2.0, 9);
  CHECK(f.size() == 9);
  CHECK(f.lo() == -2.0);
  CHECK(f.hi() == 2.0);
  CHECK(f(1.0) == 1.0);
}

TEST_CASE("property: interpolation stays between neighbouring values") {
  gen::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto f = gen::random_pl(rng, -1.0, 1.0);
    for (int s = 0; s < 50; ++s) {
      const double x = gen::uniform(rng, -1.0, 1.0);
      const auto i = f.segment(x);
      const double lo = std::min(f.value(i, 0), f.value(i + 1, 0));
      const double hi = std::max(f.value(i, 0), f.value(i + 1, 0));
      CHECK(f(x) >= lo);
      CHECK(f(x) <= hi);
    }
  }
}

TEST_CASE("property: interval extrema bound sampled values") {
  gen::Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    auto f = gen::random_pl(rng, 0.0, 1.0);
    double a = gen::uniform(rng, 0, 1), b = gen::uniform(rng, 0, 1);
    if (a > b) std::swap(a, b);
    const double mn = f.min_on(a, b), mx = f.max_on(a, b);
    for (int s = 0; s <= 100; ++s) {
      const double x = a + (b - a) * s / 100.0;
      CHECK(f(x) >= mn - 1e-15);
      CHECK(f(x) <= mx + 1e-15);
    }
  }
}
