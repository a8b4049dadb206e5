// Copyright 2026 The ipk Authors
// SPDX-License-Identifier: Apache-2.0
#include "ipk/io.hpp"

#include "ipk/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ipk::io {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json numbers_or_null(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(number_or_null(x));
  return out;
}

std::string k_label(double k) {
  std::ostringstream os;
  os << k;
  return os.str();
}

std::string join_k(const std::string& prefix, const std::vector<double>& ks) {
  std::string out;
  for (double k : ks) out += "," + prefix + k_label(k);
  return out;
}

std::string type_name(const json& v) { return v.type_name(); }

}  // namespace

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open config file");
  try {
    json doc = json::parse(in);
    if (!doc.is_object()) throw ConfigError(path.string(), "config must be a JSON object");
    return doc;
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string(), std::string("invalid JSON: ") + e.what());
  }
}

ConfigReader::ConfigReader(json doc) : doc_(std::move(doc)) {
  if (!doc_.is_object()) throw ConfigError("<root>", "config must be a JSON object");
}

bool ConfigReader::has(const std::string& key) const {
  if (!doc_.contains(key)) return false;
  seen_.push_back(key);
  return true;
}

const json& ConfigReader::value(const std::string& key) const { return at(key); }

const json& ConfigReader::at(const std::string& key) const {
  if (!doc_.contains(key)) throw ConfigError(key, "missing required field");
  seen_.push_back(key);
  return doc_.at(key);
}

double ConfigReader::number(const std::string& key) const {
  const json& v = at(key);
  if (!v.is_number()) throw ConfigError(key, "expected a number, got " + type_name(v));
  return v.get<double>();
}

double ConfigReader::number(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

int ConfigReader::integer(const std::string& key) const {
  const json& v = at(key);
  if (!v.is_number_integer()) throw ConfigError(key, "expected an integer, got " + type_name(v));
  return v.get<int>();
}

int ConfigReader::integer(const std::string& key, int fallback) const {
  return has(key) ? integer(key) : fallback;
}

std::string ConfigReader::string(const std::string& key) const {
  const json& v = at(key);
  if (!v.is_string()) throw ConfigError(key, "expected a string, got " + type_name(v));
  return v.get<std::string>();
}

std::string ConfigReader::string(const std::string& key, const std::string& fallback) const {
  return has(key) ? string(key) : fallback;
}

std::vector<double> ConfigReader::numbers(const std::string& key) const {
  const json& v = at(key);
  if (!v.is_array()) throw ConfigError(key, "expected an array of numbers, got " + type_name(v));
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) {
      throw ConfigError(key + "[" + std::to_string(i) + "]", "expected a number");
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

std::vector<double> ConfigReader::numbers(const std::string& key,
                                          const std::vector<double>& fallback) const {
  return has(key) ? numbers(key) : fallback;
}

void ConfigReader::finish() const {
  for (const auto& item : doc_.items()) {
    if (std::find(seen_.begin(), seen_.end(), item.key()) == seen_.end()) {
      throw ConfigError(item.key(), "unknown field");
    }
  }
}

SolverConfig read_solver_config(const ConfigReader& c) {
  SolverConfig cfg;
  cfg.n_r = c.integer("n_r", cfg.n_r);
  cfg.v_max = c.number("V_max", cfg.v_max);
  cfg.n_quad.n_rstar = c.integer("n_rstar", cfg.n_quad.n_rstar);
  cfg.n_quad.n_beta = c.integer("n_beta", cfg.n_quad.n_beta);
  cfg.n_quad.n_theta = c.integer("n_theta", cfg.n_quad.n_theta);
  cfg.n_quad.n_phi = c.integer("n_phi", cfg.n_quad.n_phi);
  cfg.theta_cut = c.number("theta_cut", cfg.theta_cut);
  if (c.has("dt")) {
    // "auto" and non-positive numbers both select the stability bound.
    const json& dt = c.value("dt");
    if (dt.is_string()) {
      if (dt.get<std::string>() != "auto") throw ConfigError("dt", "expected a number or \"auto\"");
      cfg.dt = 0.0;
    } else {
      cfg.dt = c.number("dt");
    }
  }
  cfg.t_end = c.number("t_end", cfg.t_end);
  cfg.k_weights = c.numbers("k_weights", cfg.k_weights);
  cfg.interp = parse_interp(c.string("interp", std::string(to_string(cfg.interp))));
  cfg.cutoff_tol = c.number("cutoff_tol", cfg.cutoff_tol);
  cfg.validate();
  return cfg;
}

RadialDistribution read_initial_data(const ConfigReader& c, const SolverConfig& s) {
  const std::string kind = c.string("initial");
  const double mass = c.number("initial_mass", 1.0);
  if (!(mass > 0.0)) throw ConfigError("initial_mass", "must be > 0");
  if (kind == "maxwellian") {
    const double t = c.number("temperature", 1.0);
    if (!(t > 0.0)) throw ConfigError("temperature", "must be > 0");
    return maxwellian(s.n_r, s.v_max, mass, t, s.interp);
  }
  if (kind == "bimodal") {
    const double lo = c.number("t_low", 0.5);
    const double hi = c.number("t_high", 1.5);
    if (!(lo > 0.0)) throw ConfigError("t_low", "must be > 0");
    if (!(hi > 0.0)) throw ConfigError("t_high", "must be > 0");
    return bimodal(s.n_r, s.v_max, mass, lo, hi, s.interp);
  }
  if (kind == "bump") {
    const double center = c.number("bump_center", 1.5);
    const double width = c.number("bump_width", 1.0);
    if (!(width > 0.0)) throw ConfigError("bump_width", "must be > 0");
    if (!(center >= 0.0)) throw ConfigError("bump_center", "must be >= 0");
    return bump(s.n_r, s.v_max, center, width, mass, s.interp);
  }
  throw ConfigError("initial", "expected maxwellian, bimodal or bump, got '" + kind + "'");
}

BoundGrids read_bound_grids(const ConfigReader& c) {
  BoundGrids g;
  g.s_values = c.numbers("s_values", g.s_values);
  for (std::size_t i = 0; i < g.s_values.size(); ++i) {
    if (!(g.s_values[i] > 0.0 && g.s_values[i] < 1.0)) {
      throw ConfigError("s_values[" + std::to_string(i) + "]", "must lie in (0, 1)");
    }
  }
  if (g.s_values.empty()) throw ConfigError("s_values", "must not be empty");
  g.n_theta = c.integer("n_theta_grid", g.n_theta);
  if (g.n_theta < 1) throw ConfigError("n_theta_grid", "must be >= 1");
  g.theta_min = c.number("theta_min", g.theta_min);
  if (!(g.theta_min > 0.0 && g.theta_min <= std::numbers::pi)) {
    throw ConfigError("theta_min", "must lie in (0, pi]");
  }
  g.table_nodes = c.integer("table_nodes", g.table_nodes);
  if (g.table_nodes < 16) throw ConfigError("table_nodes", "must be >= 16");
  g.quad_tol = c.number("quad_tol", g.quad_tol);
  if (!(g.quad_tol > 0.0 && g.quad_tol < 1e-3)) throw ConfigError("quad_tol", "must lie in (0, 1e-3)");
  g.slack = c.number("slack", g.slack);
  if (!std::isfinite(g.slack)) throw ConfigError("slack", "must be finite");
  return g;
}

void write_text_atomic(const fs::path& path, const std::string& text) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

void write_manifest(const fs::path& dir, const RunManifest& m) {
  fs::create_directories(dir);
  json doc;
  doc["schema"] = kSchemaVersion;
  doc["command"] = m.command;
  doc["config_path"] = m.config_path;
  doc["output_dir"] = m.output_dir;
  doc["seed"] = m.seed;
  doc["versions"] = {{"tool", m.tool_version}, {"config_hash", m.config_hash}};
  write_text_atomic(dir / "manifest.json", dump(doc));
}

std::string distribution_csv(const RadialDistribution& f) {
  std::ostringstream os;
  os << "# V_max=" << fmt(f.v_max()) << ",interp=" << to_string(f.interp()) << "\n";
  os << "r,f\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    os << fmt(f.r_nodes()[i]) << "," << fmt(f.values()[i]) << "\n";
  }
  return os.str();
}

RadialDistribution parse_distribution_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("# V_max=", 0) != 0) {
    throw ConfigError("csv", "first line must be '# V_max=<v>,interp=<rule>'");
  }
  const auto comma = line.find(",interp=");
  if (comma == std::string::npos) throw ConfigError("csv", "header lacks interp");
  const double v_max = std::stod(line.substr(8, comma - 8));
  const Interp interp = parse_interp(line.substr(comma + 8));
  if (!std::getline(in, line) || line != "r,f") throw ConfigError("csv", "expected 'r,f' header");
  std::vector<double> r, f;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c = line.find(',');
    if (c == std::string::npos) throw ConfigError("csv", "malformed row '" + line + "'");
    r.push_back(std::stod(line.substr(0, c)));
    f.push_back(std::stod(line.substr(c + 1)));
  }
  return RadialDistribution(std::move(r), std::move(f), interp, v_max);
}

std::string time_series_csv(const TimeSeries& s) {
  std::ostringstream os;
  os << "t,mass,energy,entropy,min_f" << join_k("l1k_", s.k_weights) << "\n";
  for (const auto& d : s.diagnostics) {
    os << fmt(d.t) << "," << fmt(d.mass) << "," << fmt(d.energy) << "," << fmt(d.entropy) << ","
       << fmt(d.min_f);
    for (double v : d.l1k) os << "," << fmt(v);
    os << "\n";
  }
  return os.str();
}

std::string scaled_error_csv(const PairRun& run) {
  std::ostringstream os;
  os << "t" << join_k("F_l1k_", run.soft.k_weights) << "\n";
  for (std::size_t n = 0; n < run.soft.times.size(); ++n) {
    os << fmt(run.soft.times[n]);
    for (double v : run.scaled_error[n]) os << "," << fmt(v);
    os << "\n";
  }
  return os.str();
}

std::string convergence_csv(const ConvergenceStudy& st) {
  std::ostringstream os;
  os << "s" << join_k("sup_F_l1k_", st.k_weights) << join_k("final_F_l1k_", st.k_weights)
     << join_k("floor_l1k_", st.k_weights) << ",mass_drift,energy_drift,entropy_violations\n";
  for (const auto& e : st.entries) {
    os << fmt(e.s);
    for (double v : e.sup_scaled_error) os << "," << fmt(v);
    for (double v : e.final_scaled_error) os << "," << fmt(v);
    for (double v : e.floor) os << "," << fmt(v);
    os << "," << fmt(e.soft_mass_drift) << "," << fmt(e.soft_energy_drift) << ","
       << e.soft_entropy_violations << "\n";
  }
  return os.str();
}

std::string kernel_rows_csv(const std::vector<double>& s_values, const std::vector<double>& thetas,
                            const std::optional<int>& table_nodes) {
  for (double s : s_values) {
    if (!(s > 0.0 && s < 1.0)) throw DomainError("kernel-eval: s must lie in (0, 1)");
  }
  for (double t : thetas) {
    if (!(t > 0.0 && t <= std::numbers::pi + 1e-9)) {
      throw DomainError("kernel-eval: theta must lie in (0, pi]");
    }
  }
  std::ostringstream os;
  os << "s,theta,b,b_bar,quad_err,rate\n";
  for (double s : s_values) {
    const ImplicitMapTable table = build_map_table(s, table_nodes.value_or(kDefaultTableNodes));
    for (double t : thetas) {
      const double theta = std::min(t, std::numbers::pi);
      const KernelValue k = angular_kernel(table, theta);
      const double bar = symmetrized_kernel(table, theta);
      const double rate = std::pow(theta, 2.0 + 2.0 * s) * std::abs(k.value - 0.25) / s;
      os << fmt(s) << "," << fmt(theta) << "," << fmt(k.value) << "," << fmt(bar) << ","
         << fmt(k.quad_err) << "," << fmt(rate) << "\n";
    }
  }
  return os.str();
}

json to_json(const InequalityCheck& c) {
  json point = json::object();
  for (const auto& [k, v] : c.worst_point) point[k] = number_or_null(v);
  return {{"name", c.name},
          {"param_grid", c.param_grid},
          {"worst_ratio", number_or_null(c.worst_ratio)},
          {"worst_point", point},
          {"slack", c.slack},
          {"passed", c.passed},
          {"n_points", c.n_points},
          {"empirical", number_or_null(c.empirical)}};
}

json bounds_report(const std::vector<InequalityCheck>& checks, const BoundGrids& g) {
  json doc;
  doc["schema"] = kSchemaVersion;
  doc["grids"] = {{"s_values", g.s_values},     {"n_theta_grid", g.n_theta},
                  {"theta_min", g.theta_min},   {"table_nodes", g.table_nodes},
                  {"quad_tol", g.quad_tol},     {"slack", g.slack},
                  {"y_max", g.y_max}};
  doc["checks"] = json::array();
  bool all = true;
  for (const auto& c : checks) {
    doc["checks"].push_back(to_json(c));
    all = all && c.passed;
  }
  doc["all_passed"] = all;
  return doc;
}

namespace {

json solver_json(const SolverConfig& c) {
  return {{"n_r", c.n_r},
          {"V_max", c.v_max},
          {"n_rstar", c.n_quad.n_rstar},
          {"n_beta", c.n_quad.n_beta},
          {"n_theta", c.n_quad.n_theta},
          {"n_phi", c.n_quad.n_phi},
          {"theta_cut", c.theta_cut},
          {"t_end", c.t_end},
          {"k_weights", c.k_weights},
          {"interp", std::string(to_string(c.interp))},
          {"cutoff_tol", c.cutoff_tol}};
}

json series_json(const TimeSeries& s) {
  return {{"kernel", s.kernel},
          {"mass_drift", number_or_null(s.mass_drift())},
          {"energy_drift", number_or_null(s.energy_drift())},
          {"entropy_violations", s.entropy_violations()},
          {"worst_entropy_increase", number_or_null(s.worst_entropy_increase())},
          {"final_min_f", number_or_null(s.diagnostics.back().min_f)}};
}

}  // namespace

json solve_summary(const PairRun& run, const SolverConfig& cfg) {
  json doc;
  doc["schema"] = kSchemaVersion;
  doc["solver"] = solver_json(cfg);
  doc["s"] = run.s;
  doc["dt"] = run.dt;
  doc["steps"] = run.soft.times.size() - 1;
  doc["soft"] = series_json(run.soft);
  doc["hard"] = series_json(run.hard);
  doc["k_weights"] = cfg.k_weights;
  doc["sup_scaled_error"] = numbers_or_null(run.sup_scaled_error);
  doc["final_scaled_error"] = numbers_or_null(run.scaled_error.back());
  return doc;
}

json convergence_summary(const ConvergenceStudy& st, const SolverConfig& cfg) {
  json doc;
  doc["schema"] = kSchemaVersion;
  doc["solver"] = solver_json(cfg);
  doc["dt"] = st.dt;
  doc["t_end"] = st.t_end;
  doc["s_values"] = st.s_values;
  doc["k_weights"] = st.k_weights;
  doc["hard"] = {{"mass_drift", number_or_null(st.hard_mass_drift)},
                 {"energy_drift", number_or_null(st.hard_energy_drift)},
                 {"entropy_violations", st.hard_entropy_violations}};
  doc["entries"] = json::array();
  for (const auto& e : st.entries) {
    doc["entries"].push_back({{"s", e.s},
                              {"sup_scaled_error", numbers_or_null(e.sup_scaled_error)},
                              {"final_scaled_error", numbers_or_null(e.final_scaled_error)},
                              {"floor", numbers_or_null(e.floor)},
                              {"mass_drift", number_or_null(e.soft_mass_drift)},
                              {"energy_drift", number_or_null(e.soft_energy_drift)},
                              {"entropy_violations", e.soft_entropy_violations}});
  }
  doc["ratio_max_over_min"] = numbers_or_null(st.ratio);
  doc["floor_margin"] = numbers_or_null(st.floor_margin);
  doc["growth_flags"] = st.growth_flags;
  return doc;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace ipk::io
