#include "discflux/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "discflux/config.hpp"
#include "discflux/csv.hpp"
#include "discflux/extremal_driver.hpp"
#include "discflux/oracles.hpp"
#include "discflux/regularized_flux.hpp"
#include "discflux/suites.hpp"
#include "discflux/version.hpp"
#include "discflux/worker_pool.hpp"

namespace fs = std::filesystem;

namespace discflux {

namespace {

struct LoadedConfig {
  std::string path;
  std::string stem;
  std::string text;
  std::string hash;
  ScenarioConfig config;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LoadedConfig load(const std::string& path) {
  LoadedConfig c;
  c.path = path;
  c.stem = fs::path(path).stem().string();
  c.text = read_text(path);
  c.hash = config_hash(c.text);
  try {
    c.config = parse_config(c.text);
  } catch (const ConfigError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return c;
}

std::vector<LoadedConfig> load_all(const std::vector<std::string>& paths) {
  std::vector<LoadedConfig> out;
  std::set<std::string> stems;
  for (const auto& p : paths) {
    out.push_back(load(p));
    if (!stems.insert(out.back().stem).second) {
      throw std::runtime_error("two configs share the name '" +
                               out.back().stem + "'");
    }
  }
  return out;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw std::runtime_error("cannot create output directory '" + dir + "'");
  }
}

std::string join(const std::string& dir, const std::string& file) {
  return (fs::path(dir) / file).string();
}

/// Hash covering several configs of one combined file.
std::string combined_hash(const std::vector<LoadedConfig>& cs) {
  std::string all;
  for (const auto& c : cs) all += c.hash;
  return cs.size() == 1 ? cs[0].hash : config_hash(all);
}

std::string snapshots_csv(const std::vector<GridSolution>& snaps,
                          const std::string& hash) {
  std::ostringstream out;
  write_provenance(out, hash);
  write_snapshots_header(out, false);
  for (const auto& s : snaps) write_snapshot_rows(out, s, nullptr);
  return out.str();
}

struct NamedRun {
  std::string run_id;
  std::string hash;
  std::vector<GridSolution> snapshots;
};

void write_runs(const std::string& dir, const std::vector<NamedRun>& runs,
                bool combined, const std::string& combined_name,
                const std::string& hash) {
  if (combined) {
    std::ostringstream out;
    write_provenance(out, hash);
    write_snapshots_header(out, true);
    for (const auto& r : runs) {
      for (const auto& s : r.snapshots) write_snapshot_rows(out, s, &r.run_id);
    }
    write_file_atomic(join(dir, combined_name), out.str());
    std::cout << "wrote " << join(dir, combined_name) << '\n';
    return;
  }
  for (const auto& r : runs) {
    const std::string path = join(dir, r.run_id + ".csv");
    write_file_atomic(path, snapshots_csv(r.snapshots, r.hash));
    std::cout << "wrote " << path << '\n';
  }
}

// ------------------------------------------------------------ commands

int cmd_parametrize(const std::string& config, const std::string& out,
                    std::optional<double> r) {
  const LoadedConfig c = load(config);
  const Parametrization p = make_parametrization(c.config);
  std::optional<RegularizedFlux> rf;
  if (r) rf = regularize(p, *r);
  std::ostringstream csv;
  write_parametrization(csv, p, rf ? &*rf : nullptr, c.hash);
  ensure_dir(out);
  const std::string path = join(out, "parametrization.csv");
  write_file_atomic(path, csv.str());
  std::cout << "wrote " << path << '\n';
  return kExitOk;
}

int cmd_solve(const std::vector<std::string>& configs, const std::string& out,
              bool combined, std::size_t jobs) {
  const auto cs = load_all(configs);
  std::vector<NamedRun> runs(cs.size());
  std::vector<std::function<void()>> tasks;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    tasks.push_back([&, i] {
      runs[i] = {cs[i].stem, cs[i].hash, solve_scenario(cs[i].config)};
    });
  }
  run_parallel(tasks, jobs);
  ensure_dir(out);
  write_runs(out, runs, combined, "solutions.csv", combined_hash(cs));
  return kExitOk;
}

nlohmann::json report_json(const ExtremalResult& r) {
  nlohmann::json j;
  j["iterations"] = r.iterations;
  j["increments"] = r.increments;
  j["converged"] = r.converged;
  j["d_values"] = r.d_values;
  j["r_values"] = r.r_values;
  j["max_rise"] = r.max_rise;
  j["window"] = {r.window.lo, r.window.hi};
  return j;
}

int cmd_extremal(const std::vector<std::string>& configs,
                 const std::string& out, const std::string& which,
                 bool combined, std::size_t jobs) {
  const auto cs = load_all(configs);
  std::vector<std::string> kinds;
  if (which == "largest" || which == "both") kinds.push_back("largest");
  if (which == "smallest" || which == "both") kinds.push_back("smallest");

  std::vector<ExtremalResult> results(cs.size() * kinds.size());
  std::vector<std::function<void()>> tasks;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      tasks.push_back([&, i, k] {
        const ScenarioConfig& c = cs[i].config;
        const JumpFlux f = make_flux(c);
        const GridSolution u0 = make_initial(c);
        results[i * kinds.size() + k] =
            kinds[k] == "largest" ? solve_largest(f, u0, c.extremal)
                                  : solve_smallest(f, u0, c.extremal);
      });
    }
  }
  run_parallel(tasks, jobs);

  ensure_dir(out);
  std::vector<NamedRun> runs;
  bool all_converged = true;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    nlohmann::json report;
    report["config"] = cs[i].path;
    report["config_hash"] = cs[i].hash;
    report["version"] = kVersion;
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      const ExtremalResult& r = results[i * kinds.size() + k];
      report["runs"][kinds[k]] = report_json(r);
      runs.push_back({cs[i].stem + "_" + kinds[k], cs[i].hash, r.solutions});
      all_converged = all_converged && r.converged;
      std::cout << cs[i].stem << ' ' << kinds[k] << ": " << r.iterations
                << " iteration(s), "
                << (r.converged ? "converged" : "NOT converged") << '\n';
    }
    const std::string path = join(out, cs[i].stem + "_report.json");
    write_file_atomic(path, report.dump(2) + "\n");
    std::cout << "wrote " << path << '\n';
  }
  write_runs(out, runs, combined, "extremal.csv", combined_hash(cs));
  if (!all_converged) {
    std::cerr << "warning: some runs did not converge; see the report\n";
  }
  return kExitOk;
}

int report_checks(const std::vector<Check>& checks, const std::string& out) {
  bool ok = true;
  std::ostringstream csv;
  csv << "suite,check,measured,relation,threshold,status\n";
  for (const Check& c : checks) {
    char line[256];
    std::snprintf(line, sizeof line, "%-9s %-52s %12.5g %s %-10.5g %s",
                  c.suite.c_str(), c.label.c_str(), c.measured,
                  c.relation.c_str(), c.threshold, c.pass ? "PASS" : "FAIL");
    std::cout << line << '\n';
    csv << c.suite << ",\"" << c.label << "\"," << format_double(c.measured)
        << ',' << c.relation << ',' << format_double(c.threshold) << ','
        << (c.pass ? "PASS" : "FAIL") << '\n';
    ok = ok && c.pass;
  }
  if (!out.empty()) {
    ensure_dir(out);
    const std::string path = join(out, "verify.csv");
    write_file_atomic(path, csv.str());
    std::cout << "wrote " << path << '\n';
  }
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_verify_input(const std::string& input, const std::string& oracle_name,
                     const std::vector<double>& window, double threshold,
                     const std::string& run, const std::string& out) {
  std::ifstream in(input);
  if (!in) throw std::runtime_error("cannot read '" + input + "'");
  const auto snaps = read_snapshots(in);
  const OracleField oracle = oracle_by_name(oracle_name);
  std::vector<Check> checks;
  for (const Snapshot& s : snaps) {
    const Window w = window.empty()
                         ? Window{s.solution.x_lo(), s.solution.x_hi()}
                         : Window{window[0], window[1]};
    if (!run.empty() && s.run_id != run) continue;
    if (!oracle.valid_at(s.solution.time())) continue;
    char label[128];
    std::snprintf(label, sizeof label, "%s%sL1 to %s at t=%g",
                  s.run_id.c_str(), s.run_id.empty() ? "" : " ",
                  oracle.name.c_str(), s.solution.time());
    const double d = score(s.solution, oracle, w);
    checks.push_back({"input", label, d, threshold, "<=", d <= threshold});
  }
  if (checks.empty()) throw std::runtime_error("no snapshot to score");
  return report_checks(checks, out);
}

int cmd_convergence(const std::string& config, const std::string& out,
                    int refine, const std::string& which, std::size_t jobs) {
  const LoadedConfig lc = load(config);
  const ScenarioConfig& base = lc.config;
  if (!base.verify) {
    throw std::runtime_error(config + ": convergence needs a [verify] oracle");
  }
  const OracleField oracle = oracle_by_name(base.verify->oracle);
  std::vector<double> errors(static_cast<std::size_t>(refine));
  std::vector<std::size_t> cells(errors.size());
  std::vector<double> dxs(errors.size());
  std::vector<std::function<void()>> tasks;
  for (std::size_t k = 0; k < errors.size(); ++k) {
    tasks.push_back([&, k] {
      ScenarioConfig c = base;
      c.domain.cells = base.domain.cells << k;
      const GridSolution u0 = make_initial(c);
      GridSolution last = u0;
      if (which == "solve") {
        last = solve_scenario(c).back();
      } else {
        const JumpFlux f = make_flux(c);
        last = (which == "largest" ? solve_largest(f, u0, c.extremal)
                                   : solve_smallest(f, u0, c.extremal))
                   .solutions.back();
      }
      const Window w = base.verify->window.value_or(analysis_window(u0, c.extremal));
      errors[k] = score(last, oracle, w);
      cells[k] = c.domain.cells;
      dxs[k] = u0.dx();
    });
  }
  run_parallel(tasks, jobs);

  std::ostringstream csv;
  write_provenance(csv, lc.hash);
  csv << "level,cells,dx,error,ratio\n";
  bool monotone = true;
  for (std::size_t k = 0; k < errors.size(); ++k) {
    const std::string ratio =
        k == 0 ? "" : format_double(errors[k - 1] / errors[k]);
    if (k > 0 && errors[k] > errors[k - 1]) monotone = false;
    csv << k << ',' << cells[k] << ',' << format_double(dxs[k]) << ','
        << format_double(errors[k]) << ',' << ratio << '\n';
    std::printf("level %zu  cells %zu  dx %-10.5g error %.6g\n", k, cells[k],
                dxs[k], errors[k]);
  }
  const bool halved = errors.back() <= 0.5 * errors.front();
  std::printf("monotone: %s  final <= half initial: %s\n",
              monotone ? "yes" : "no", halved ? "yes" : "no");
  ensure_dir(out);
  const std::string path = join(out, "convergence.csv");
  write_file_atomic(path, csv.str());
  std::cout << "wrote " << path << '\n';
  return monotone && halved ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run_command(int argc, const char* const* argv) {
  CLI::App app{"Entropy solutions of scalar conservation laws with "
               "discontinuous flux"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::vector<std::string> configs;
  std::string out, which = "both", suite, input, oracle, run;
  std::optional<double> regularize_r;
  std::vector<double> window;
  double threshold = 0.05;
  bool combined = false;
  std::size_t jobs = 1;
  int refine = 4;

  auto* par = app.add_subcommand("parametrize", "write the (b, g) table");
  par->add_option("--config", configs, "scenario config")->required()->expected(1);
  par->add_option("--out", out, "output directory")->required();
  par->add_option("--regularize", regularize_r, "append b_r and phi_r for this r")
      ->check(CLI::Range(1.0, 1e300));

  auto* sol = app.add_subcommand("solve", "one regularized solve per config");
  sol->add_option("--config", configs, "scenario config(s)")->required();
  sol->add_option("--out", out, "output directory")->required();
  sol->add_flag("--combined", combined, "one CSV with a run_id column");
  sol->add_option("--jobs", jobs, "worker threads (0: all cores)");

  auto* ext = app.add_subcommand("extremal", "largest/smallest solutions");
  ext->add_option("--config", configs, "scenario config(s)")->required();
  ext->add_option("--out", out, "output directory")->required();
  ext->add_option("--which", which, "largest | smallest | both")
      ->check(CLI::IsMember({"largest", "smallest", "both"}));
  ext->add_flag("--combined", combined, "one CSV with a run_id column");
  ext->add_option("--jobs", jobs, "worker threads (0: all cores)");

  auto* ver = app.add_subcommand("verify", "bundled suites or score a CSV");
  auto* suite_opt = ver->add_option("--suite", suite,
                                    "example1 | example2 | periodic | all");
  auto* input_opt = ver->add_option("--input", input, "solver CSV to score");
  ver->add_option("--oracle", oracle, "oracle name for --input")
      ->needs(input_opt);
  ver->add_option("--window", window, "lo hi")->expected(2)->needs(input_opt);
  ver->add_option("--threshold", threshold, "L1 threshold for --input")
      ->needs(input_opt);
  ver->add_option("--run", run, "only score this run_id")->needs(input_opt);
  ver->add_option("--out", out, "also write verify.csv here");
  ver->add_option("--jobs", jobs, "worker threads (0: all cores)");
  suite_opt->excludes(input_opt);

  auto* conv = app.add_subcommand("convergence", "grid refinement ladder");
  conv->add_option("--config", configs, "scenario config")->required()->expected(1);
  conv->add_option("--out", out, "output directory")->required();
  conv->add_option("--refine", refine, "number of levels (cells doubled per level)")
      ->check(CLI::Range(2, 12));
  conv->add_option("--which", which, "largest | smallest | solve")
      ->check(CLI::IsMember({"largest", "smallest", "solve"}));
  conv->add_option("--jobs", jobs, "worker threads (0: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*par) return cmd_parametrize(configs.front(), out, regularize_r);
    if (*sol) return cmd_solve(configs, out, combined, jobs);
    if (*ext) return cmd_extremal(configs, out, which, combined, jobs);
    if (*ver) {
      if (!suite.empty()) return report_checks(run_suite(suite, jobs), out);
      if (input.empty() || oracle.empty()) {
        throw std::runtime_error("verify needs --suite or --input with --oracle");
      }
      return cmd_verify_input(input, oracle, window, threshold, run, out);
    }
    if (*conv) {
      if (which == "both") which = "largest";
      return cmd_convergence(configs.front(), out, refine, which, jobs);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

int run_command(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"discflux"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_command(static_cast<int>(argv.size()), argv.data());
}

}  // namespace discflux
