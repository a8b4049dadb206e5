// Copyright 2026 The ipk Authors
// SPDX-License-Identifier: Apache-2.0
//
// Configuration parsing, CSV/JSON emission and run manifests.
#pragma once

#include "ipk/bounds.hpp"
#include "ipk/collision.hpp"
#include "ipk/radial.hpp"
#include "ipk/solver.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace ipk::io {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

/// Formats with 17 significant digits.
std::string fmt(double x);

/// FNV-1a 64-bit, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

/// Reads a JSON object from disk; throws ConfigError("<path>", ...) on I/O
/// or syntax errors.
nlohmann::ordered_json read_json_file(const std::filesystem::path& path);

/// Typed view over a flat JSON config. Every accessor throws ConfigError
/// carrying the key (and index for arrays) on a type or range mismatch.
/// `finish()` rejects keys that were never read.
class ConfigReader {
 public:
  explicit ConfigReader(nlohmann::ordered_json doc);

  bool has(const std::string& key) const;
  /// The raw value; throws ConfigError when missing.
  const nlohmann::ordered_json& value(const std::string& key) const;
  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  int integer(const std::string& key) const;
  int integer(const std::string& key, int fallback) const;
  std::string string(const std::string& key) const;
  std::string string(const std::string& key, const std::string& fallback) const;
  std::vector<double> numbers(const std::string& key) const;
  std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback) const;
  void finish() const;

 private:
  const nlohmann::ordered_json& at(const std::string& key) const;
  nlohmann::ordered_json doc_;
  mutable std::vector<std::string> seen_;
};

/// Solver fields: n_r, V_max, n_rstar, n_beta, n_theta, n_phi, theta_cut,
/// dt (number or "auto"), t_end, k_weights, interp, cutoff_tol. All
/// optional; validated.
SolverConfig read_solver_config(const ConfigReader& cfg);

/// initial: "maxwellian" | "bimodal" | "bump" with optional
/// initial_mass, temperature, t_low, t_high, bump_center, bump_width.
RadialDistribution read_initial_data(const ConfigReader& cfg, const SolverConfig& solver);

/// s_values, n_theta_grid, theta_min, table_nodes, quad_tol, slack.
BoundGrids read_bound_grids(const ConfigReader& cfg);

struct RunManifest {
  std::string command;
  std::string config_path;
  std::string output_dir;
  std::uint64_t seed = 0;
  std::string tool_version = kToolVersion;
  std::string config_hash;
};

/// Creates `dir` and writes manifest.json through a temporary file and a
/// rename, before anything else is written.
void write_manifest(const std::filesystem::path& dir, const RunManifest& manifest);

/// Writes `text` to `path` through a temporary file and a rename.
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

/// "# V_max=<v>,interp=<rule>" then "r,f" and one row per node.
std::string distribution_csv(const RadialDistribution& f);
RadialDistribution parse_distribution_csv(const std::string& text);

/// t,mass,energy,entropy,min_f,l1k_<k>...
std::string time_series_csv(const TimeSeries& series);
/// t,F_l1k_<k>... for a pair run.
std::string scaled_error_csv(const PairRun& run);
/// s,sup_F_l1k_<k>...,final_F_l1k_<k>...,floor_l1k_<k>...,mass_drift,energy_drift,entropy_violations
std::string convergence_csv(const ConvergenceStudy& study);
/// s,theta,b,b_bar,quad_err,rate
std::string kernel_rows_csv(const std::vector<double>& s_values, const std::vector<double>& thetas,
                            const std::optional<int>& table_nodes = std::nullopt);

nlohmann::ordered_json to_json(const InequalityCheck& check);
nlohmann::ordered_json bounds_report(const std::vector<InequalityCheck>& checks, const BoundGrids& grids);
nlohmann::ordered_json solve_summary(const PairRun& run, const SolverConfig& cfg);
nlohmann::ordered_json convergence_summary(const ConvergenceStudy& study, const SolverConfig& cfg);

/// Pretty JSON with round-trip number formatting; non-finite numbers are
/// emitted as null.
std::string dump(const nlohmann::ordered_json& doc);

}  // namespace ipk::io
