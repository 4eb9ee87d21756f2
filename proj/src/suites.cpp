#include "discflux/suites.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <cstdio>
#include <stdexcept>

#include "discflux/config.hpp"
#include "discflux/extremal_driver.hpp"
#include "discflux/oracles.hpp"
#include "discflux/worker_pool.hpp"

namespace discflux {

namespace {

const std::map<std::string, std::string>& bundled() {
  static const std::map<std::string, std::string> configs = {
      {"example1_largest", R"(# Heaviside flux, u0 = 1/(1+x^2): largest solution is stationary.
[flux]
preset = heaviside
state_range = [-2, 2]

[domain]
x_lo = -20
x_hi = 20
cells = 4000

[initial]
preset = example1

[times]
t_end = 1

[extremal]
r0 = 64
window = [-10, 10]

[verify]
oracle = example1_largest
window = [-10, 10]
threshold = 0.05
)"},
      {"example1_smallest", R"(# Heaviside flux, u0 = 1/(1+x^2): smallest solution, front x = tan(t - pi/2).
[flux]
preset = heaviside
state_range = [-2, 2]

[domain]
x_lo = -40
x_hi = 40
cells = 1600

[initial]
preset = example1

[times]
snapshots = [1, 2, 3]
t_end = 3.5

[extremal]
r0 = 64
)"},
      {"example2", R"(# Indicator flux, Riemann data H(x).
[flux]
preset = indicator
state_range = [-1, 2]

[regularization]
r = 64

[domain]
x_lo = -10
x_hi = 10
cells = 2000
boundary = constant
left = 0
right = 1

[initial]
preset = example2

[times]
t_end = 1

[verify]
oracle = example2
window = [-5, 5]
threshold = 0.05
)"},
      {"periodic", R"(# Heaviside flux, one period of 0.5 + 0.4 sin(2 pi x).
[flux]
preset = heaviside
state_range = [-2, 2]

[domain]
x_lo = 0
x_hi = 1
cells = 1000
boundary = periodic

[initial]
preset = sine
mean = 0.5
amplitude = 0.4
wavenumber = 1

[times]
t_end = 1

[extremal]
r0 = 64
)"},
  };
  return configs;
}

Check make_check(const std::string& suite, const std::string& label,
                 double measured, double threshold,
                 const std::string& relation = "<=") {
  const bool pass = relation == "<=" ? measured <= threshold
                                     : measured > threshold;
  return {suite, label, measured, threshold, relation, pass && std::isfinite(measured)};
}

using Task = std::function<std::vector<Check>()>;

std::vector<Task> example1_tasks() {
  std::vector<Task> tasks;
  tasks.push_back([] {
    const ScenarioConfig c = parse_config(bundled_config("example1_largest"));
    const ExtremalResult r =
        solve_largest(make_flux(c), make_initial(c), c.extremal);
    const Window w = c.verify->window.value();
    return std::vector<Check>{
        make_check("example1", "largest L1 to 1/(1+x^2) on [-10,10] at t=1",
                   score(r.solutions.back(), example1_largest_field(), w),
                   c.verify->threshold)};
  });
  tasks.push_back([] {
    const ScenarioConfig c = parse_config(bundled_config("example1_smallest"));
    const ExtremalResult r =
        solve_smallest(make_flux(c), make_initial(c), c.extremal);
    std::vector<Check> out;
    for (const GridSolution& s : r.solutions) {
      const double err = std::abs(window_mass(s, r.window) -
                                  example1_smallest_mass(s.time()));
      char label[96];
      std::snprintf(label, sizeof label,
                    "smallest |mass - (pi-t)^+| on window at t=%g", s.time());
      out.push_back(make_check("example1", label, err, 0.1));
      if (s.time() == 2.0) {
        const double front = detect_front(
            s, [](double x) { return example1_largest(0, x); }, 0.5, r.window);
        out.push_back(make_check("example1",
                                 "smallest |front - tan(2-pi/2)| at t=2",
                                 std::abs(front - example1_front(2.0)), 0.2));
      }
    }
    return out;
  });
  return tasks;
}

std::vector<Task> example2_tasks() {
  return {[] {
    ScenarioConfig c = parse_config(bundled_config("example2"));
    // Dense snapshots for the weak-form residual.
    c.snapshots.clear();
    for (int n = 1; n < 100; ++n) c.snapshots.push_back(n * c.t_end / 100);
    std::vector<GridSolution> snaps = solve_scenario(c);
    snaps.insert(snaps.begin(), make_initial(c));
    const Window w = c.verify->window.value();
    const PLFunction phi = solver_flux(c);
    const JumpFlux chi = make_flux(c);
    const TestFunction f = bump_test_function(c.t_end, 0.0, 1.0);
    const double extended =
        weak_residual(snaps, [&](double u) { return phi(u); }, f);
    const double single = weak_residual(
        snaps, [&](double u) { return chi.eval(u, Side::kPoint); }, f);
    return std::vector<Check>{
        make_check("example2", "L1 to H(x) on [-5,5] at t=1",
                   score(snaps.back(), example2_field(), w),
                   c.verify->threshold),
        make_check("example2", "weak residual, extended flux",
                   std::abs(extended), 0.01),
        make_check("example2", "weak residual, single-valued flux",
                   std::abs(single), 0.5, ">")};
  }};
}

std::vector<Task> periodic_tasks() {
  return {[] {
    const ScenarioConfig c = parse_config(bundled_config("periodic"));
    const JumpFlux f = make_flux(c);
    const GridSolution u0 = make_initial(c);
    const ExtremalResult hi = solve_largest(f, u0, c.extremal);
    const ExtremalResult lo = solve_smallest(f, u0, c.extremal);
    const GridSolution& a = hi.solutions.back();
    const GridSolution& b = lo.solutions.back();
    double diff = 0.0, tv = 0.0;
    for (std::size_t j = 0; j < a.cells(); ++j) {
      diff += std::abs(a[j] - b[j]) * a.dx();
      tv += std::abs(u0[(j + 1) % u0.cells()] - u0[j]);
    }
    const double m0 = u0.mass() / (u0.x_hi() - u0.x_lo());
    const double len = u0.x_hi() - u0.x_lo();
    return std::vector<Check>{
        make_check("periodic", "L1(largest - smallest) at t=1", diff,
                   3 * u0.dx() * tv),
        make_check("periodic", "|mean change| largest",
                   std::abs(a.mass() / len - m0), 1e-10),
        make_check("periodic", "|mean change| smallest",
                   std::abs(b.mass() / len - m0), 1e-10)};
  }};
}

std::vector<Task> tasks_for(const std::string& name) {
  if (name == "example1") return example1_tasks();
  if (name == "example2") return example2_tasks();
  if (name == "periodic") return periodic_tasks();
  if (name == "all") {
    std::vector<Task> all;
    for (const auto& n : suite_names()) {
      auto t = tasks_for(n);
      all.insert(all.end(), t.begin(), t.end());
    }
    return all;
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"example1", "example2", "periodic"};
}

std::vector<std::string> bundled_config_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : bundled()) out.push_back(name);
  return out;
}

std::string bundled_config(const std::string& name) {
  auto it = bundled().find(name);
  if (it == bundled().end()) {
    throw std::invalid_argument("unknown bundled config '" + name + "'");
  }
  return it->second;
}

std::vector<Check> run_suite(const std::string& name, std::size_t jobs) {
  const std::vector<Task> tasks = tasks_for(name);
  std::vector<std::vector<Check>> results(tasks.size());
  std::vector<std::function<void()>> work;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    work.push_back([&, i] { results[i] = tasks[i](); });
  }
  run_parallel(work, jobs);
  std::vector<Check> out;
  for (auto& r : results) out.insert(out.end(), r.begin(), r.end());
  return out;
}

}  // namespace discflux
