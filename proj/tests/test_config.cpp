#include <doctest.h>

#include <string>

#include "discflux/config.hpp"

using namespace discflux;

namespace {

const std::string kMinimal = R"(# smallest useful scenario
[flux]
preset = heaviside
state_range = [-2, 2]

[domain]
x_lo = -20
x_hi = 20
cells = 400

[initial]
preset = example1
)";

ConfigError error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("expected a ConfigError");
  return ConfigError("", 0, 0);
}

std::string replace(std::string s, const std::string& from,
                    const std::string& to) {
  s.replace(s.find(from), from.size(), to);
  return s;
}

}  // namespace

TEST_CASE("minimal example 1 config and its defaults") {
  const ScenarioConfig c = parse_config(kMinimal);
  CHECK(c.flux.preset == "heaviside");
  CHECK(c.flux.state_range.lo == -2.0);
  CHECK(c.domain.cells == 400);
  CHECK_FALSE(c.domain.periodic);
  CHECK(c.r == 64.0);
  CHECK(c.t_end == 1.0);
  CHECK(c.theta == 0.5);
  CHECK(c.scheme.cfl == doctest::Approx(0.9));
  CHECK(c.scheme.flux == FluxKind::kGodunov);
  CHECK(c.extremal.r0 == 64.0);
  CHECK_FALSE(c.verify.has_value());

  const GridSolution u0 = make_initial(c);
  CHECK(u0.cells() == 400);
  CHECK(u0.boundary().left == doctest::Approx(1.0 / 401.0).epsilon(1e-3));
  CHECK(make_flux(c).jumps().size() == 1);
}

TEST_CASE("missing state range is named") {
  const auto e =
      error_of(replace(kMinimal, "state_range = [-2, 2]\n", ""));
  CHECK(e.path() == "flux.state_range");
  CHECK(std::string(e.what()).find("flux.state_range") != std::string::npos);
}

TEST_CASE("unknown keys are rejected with their path") {
  const auto e = error_of(kMinimal + "\n[schem]\ncfl = 0.5\n");
  CHECK(std::string(e.what()).find("schem.cfl") != std::string::npos);

  const auto f = error_of(replace(kMinimal, "cells = 400", "cells = 400\ncels = 3"));
  CHECK(std::string(f.what()).find("domain.cels") != std::string::npos);
}

TEST_CASE("syntax errors carry line and column") {
  const auto e = error_of(replace(kMinimal, "x_hi = 20", "x_hi = [20"));
  CHECK(e.line() == 8);
  CHECK(e.column() > 0);
  CHECK(std::string(e.what()).rfind("line 8, column", 0) == 0);

  const auto dup = error_of(kMinimal + "[flux]\n");
  CHECK(dup.line() > 0);
}

TEST_CASE("semantic checks") {
  // negative end time
  CHECK_THROWS_AS(parse_config(kMinimal + "[times]\nt_end = -1\n"), ConfigError);
  // snapshot after the end time
  CHECK_THROWS_AS(parse_config(kMinimal + "[times]\nt_end = 1\nsnapshots = [2]\n"),
                  ConfigError);
  // weights must match the jumps
  CHECK_THROWS_AS(parse_config(kMinimal + "[parametrization]\nweights = [1, 1]\n"),
                  ConfigError);
  // initial data outside the state range
  CHECK_THROWS_AS(parse_config(replace(kMinimal, "preset = example1",
                                       "preset = constant\nvalue = 3")),
                  ConfigError);
  // unknown preset
  CHECK_THROWS_AS(parse_config(replace(kMinimal, "heaviside", "heavyside")),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(replace(kMinimal, "cells = 400", "cells = 0")),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(kMinimal + "[scheme]\nflux = lax_friedrichs\n"),
                  ConfigError);
}

TEST_CASE("custom jumps and tables") {
  const std::string text = R"(
[flux]
preset = custom
state_range = [-1, 1]

[[flux.piece]]
breakpoints = [-1, 0]
values = [0, 1]

[[flux.piece]]
breakpoints = [0, 1]
values = [2, 1]

[[flux.jump]]
location = 0
left = [1]
point = [1.5]
right = [2]

[parametrization]
weights = [0.25]
theta = 0.25

[domain]
x_lo = 0
x_hi = 1
cells = 10
boundary = periodic

[initial]
preset = custom_table
x = [0, 1]
u = [-0.5, 0.5]
)";
  const ScenarioConfig c = parse_config(text);
  const JumpFlux f = make_flux(c);
  REQUIRE(f.jumps().size() == 1);
  CHECK(f.jumps()[0].point[0] == 1.5);
  const Parametrization p = make_parametrization(c);
  CHECK(p.weights().h[0] == 0.25);
  CHECK(p.theta() == 0.25);
  CHECK(make_initial(c).boundary().is_periodic());
}

TEST_CASE("config hash is stable and content sensitive") {
  CHECK(config_hash(kMinimal) == config_hash(kMinimal));
  CHECK(config_hash(kMinimal) != config_hash(kMinimal + " "));
  CHECK(config_hash("").size() == 16);
  CHECK(config_hash("") == "cbf29ce484222325");
}
