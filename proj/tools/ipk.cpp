// Copyright 2026 The ipk Authors
// SPDX-License-Identifier: Apache-2.0
//
// ipk: kernel evaluation, bound verification and solver runs.
//
// Exit status: 0 success, 1 a verification check failed, 2 usage or
// configuration error, 3 numerical failure.

#include "ipk/bounds.hpp"
#include "ipk/errors.hpp"
#include "ipk/io.hpp"
#include "ipk/solver.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitFailedCheck = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct Common {
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// --out wins; otherwise OUTPUT_DIR; otherwise empty.
std::string output_dir(const Common& c) {
  if (!c.out.empty()) return c.out;
  if (const char* env = std::getenv("OUTPUT_DIR")) return env;
  return {};
}

std::string require_output_dir(const Common& c) {
  std::string dir = output_dir(c);
  if (dir.empty()) throw ipk::ConfigError("--out", "an output directory is required (or OUTPUT_DIR)");
  return dir;
}

json load_config(const Common& c) {
  if (c.config.empty()) return json::object();
  return ipk::io::read_json_file(c.config);
}

void start_run(const std::string& command, const Common& c, const std::string& dir,
               const std::string& hashed) {
  ipk::io::RunManifest m;
  m.command = command;
  m.config_path = c.config;
  m.output_dir = dir;
  m.seed = c.seed;
  m.config_hash = ipk::io::fnv1a_hex(hashed);
  ipk::io::write_manifest(dir, m);
}

std::string hash_input(const Common& c, const json& extra) {
  std::string text = c.config.empty() ? std::string() : slurp(c.config);
  return text + "\n" + extra.dump();
}

int cmd_kernel_eval(const Common& c, std::vector<double> s_list, std::vector<double> thetas) {
  ipk::io::ConfigReader cfg(load_config(c));
  if (s_list.empty()) s_list = cfg.numbers("s_values", {});
  if (thetas.empty()) thetas = cfg.numbers("thetas", {});
  const int nodes = cfg.integer("table_nodes", ipk::kDefaultTableNodes);
  cfg.has("seed");
  cfg.finish();
  if (s_list.empty()) throw ipk::ConfigError("--s", "at least one s value is required");
  if (thetas.empty()) throw ipk::ConfigError("--theta", "at least one theta value is required");
  for (double t : thetas) {
    if (!(t > 0.0 && t <= std::numbers::pi + 1e-9)) {
      throw ipk::ConfigError("--theta", "values must lie in (0, pi]");
    }
  }
  for (double s : s_list) {
    if (!(s > 0.0 && s < 1.0)) throw ipk::ConfigError("--s", "values must lie in (0, 1)");
  }
  const std::string dir = output_dir(c);
  if (!dir.empty()) {
    start_run("kernel-eval", c, dir, hash_input(c, {{"s", s_list}, {"theta", thetas}}));
  }
  const std::string csv = ipk::io::kernel_rows_csv(s_list, thetas, nodes);
  if (dir.empty()) {
    std::cout << csv;
  } else {
    ipk::io::write_text_atomic(fs::path(dir) / "kernel.csv", csv);
  }
  return 0;
}

int cmd_verify_bounds(const Common& c, std::optional<double> slack) {
  ipk::io::ConfigReader cfg(load_config(c));
  ipk::BoundGrids grids = ipk::io::read_bound_grids(cfg);
  cfg.has("seed");
  cfg.finish();
  if (slack) grids.slack = *slack;
  const std::string dir = require_output_dir(c);
  start_run("verify-bounds", c, dir, hash_input(c, {{"slack", grids.slack}}));
  const auto checks = ipk::run_bound_suite(grids);
  const json report = ipk::io::bounds_report(checks, grids);
  ipk::io::write_text_atomic(fs::path(dir) / "bounds_report.json", ipk::io::dump(report));
  bool all = true;
  for (const auto& chk : checks) {
    std::cout << (chk.passed ? "PASS " : "FAIL ") << chk.name
              << " worst_ratio=" << ipk::io::fmt(chk.worst_ratio) << "\n";
    all = all && chk.passed;
  }
  return all ? 0 : kExitFailedCheck;
}

int cmd_solve(const Common& c) {
  if (c.config.empty()) throw ipk::ConfigError("--config", "solve needs a config file");
  ipk::io::ConfigReader cfg(load_config(c));
  const ipk::SolverConfig solver = ipk::io::read_solver_config(cfg);
  const ipk::RadialDistribution f_in = ipk::io::read_initial_data(cfg, solver);
  const double s = cfg.number("s");
  if (!(s > 0.0 && s < 0.125)) throw ipk::ConfigError("s", "must lie in (0, 1/8)");
  cfg.has("seed");
  cfg.finish();
  const std::string dir = require_output_dir(c);
  start_run("solve", c, dir, hash_input(c, json::object()));

  const ipk::PairRun run = ipk::run_pair(f_in, s, solver);
  const fs::path out(dir);
  ipk::io::write_text_atomic(out / "initial.csv", ipk::io::distribution_csv(f_in));
  ipk::io::write_text_atomic(out / "series_soft.csv", ipk::io::time_series_csv(run.soft));
  ipk::io::write_text_atomic(out / "series_hard.csv", ipk::io::time_series_csv(run.hard));
  ipk::io::write_text_atomic(out / "scaled_error.csv", ipk::io::scaled_error_csv(run));
  ipk::io::write_text_atomic(out / "final_soft.csv",
                             ipk::io::distribution_csv(run.soft.snapshots.back()));
  ipk::io::write_text_atomic(out / "final_hard.csv",
                             ipk::io::distribution_csv(run.hard.snapshots.back()));
  ipk::io::write_text_atomic(out / "summary.json",
                             ipk::io::dump(ipk::io::solve_summary(run, solver)));
  return 0;
}

int cmd_converge(const Common& c) {
  if (c.config.empty()) throw ipk::ConfigError("--config", "converge needs a config file");
  ipk::io::ConfigReader cfg(load_config(c));
  const ipk::SolverConfig solver = ipk::io::read_solver_config(cfg);
  const ipk::RadialDistribution f_in = ipk::io::read_initial_data(cfg, solver);
  const std::vector<double> s_list = cfg.numbers("s_list");
  for (std::size_t i = 0; i < s_list.size(); ++i) {
    const std::string key = "s_list[" + std::to_string(i) + "]";
    if (!(s_list[i] > 0.0 && s_list[i] < 0.125)) throw ipk::ConfigError(key, "must lie in (0, 1/8)");
    if (i > 0 && !(s_list[i] < s_list[i - 1])) throw ipk::ConfigError(key, "s_list must decrease");
  }
  if (s_list.empty()) throw ipk::ConfigError("s_list", "must not be empty");
  ipk::StudyOptions opts;
  if (cfg.has("floor")) {
    const json& v = cfg.value("floor");
    if (!v.is_boolean()) throw ipk::ConfigError("floor", "expected a boolean");
    opts.with_floor = v.get<bool>();
  }
  cfg.has("seed");
  cfg.finish();
  const std::string dir = require_output_dir(c);
  start_run("converge", c, dir, hash_input(c, json::object()));

  const ipk::ConvergenceStudy study = ipk::convergence_study(f_in, s_list, solver, opts);
  const fs::path out(dir);
  ipk::io::write_text_atomic(out / "convergence.csv", ipk::io::convergence_csv(study));
  ipk::io::write_text_atomic(out / "summary.json",
                             ipk::io::dump(ipk::io::convergence_summary(study, solver)));
  return 0;
}

std::uint64_t read_seed(const std::string& config) {
  if (config.empty()) return 0;
  const json doc = ipk::io::read_json_file(config);
  if (!doc.contains("seed")) return 0;
  if (!doc["seed"].is_number_unsigned()) throw ipk::ConfigError("seed", "expected an unsigned integer");
  return doc["seed"].get<std::uint64_t>();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inverse-power Boltzmann kernel toolkit"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config, "Flat JSON config file");
    sub->add_option("--out", common.out, "Output directory (default: $OUTPUT_DIR)");
  };

  std::vector<double> s_list, thetas;
  CLI::App* kernel = app.add_subcommand("kernel-eval", "Tabulate b and b_bar on an (s, theta) grid");
  add_common(kernel);
  kernel->add_option("--s", s_list, "Softness values")->delimiter(',');
  kernel->add_option("--theta", thetas, "Deviation angles in (0, pi]")->delimiter(',');

  double slack_value = 0.0;
  CLI::App* bounds = app.add_subcommand("verify-bounds", "Run the inequality suite");
  add_common(bounds);
  CLI::Option* slack_opt = bounds->add_option("--slack", slack_value, "Override the ratio slack");

  CLI::App* solve = app.add_subcommand("solve", "Soft and hard-sphere flows from one initial state");
  add_common(solve);
  CLI::App* converge = app.add_subcommand("converge", "Scaled-error study over several s");
  add_common(converge);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    common.seed = read_seed(common.config);
    if (kernel->parsed()) return cmd_kernel_eval(common, s_list, thetas);
    if (bounds->parsed()) {
      return cmd_verify_bounds(common, slack_opt->count() ? std::optional<double>(slack_value)
                                                          : std::nullopt);
    }
    if (solve->parsed()) return cmd_solve(common);
    if (converge->parsed()) return cmd_converge(common);
  } catch (const ipk::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ipk::DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
