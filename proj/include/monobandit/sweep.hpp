#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "monobandit/algorithms.hpp"
#include "monobandit/noise.hpp"
#include "monobandit/regret.hpp"

namespace monobandit {

inline constexpr int kSchemaVersion = 1;
/// Horizons whose first estimate took more than this share of the budget are
/// pre-asymptotic and left out of slope fits.
inline constexpr double kPreAsymptoticShare = 0.9;

struct SweepAlgo {
  std::string label;  // directory name; defaults to the variant name
  AlgoConfig config;  // T is set per cell
};

struct SweepConfig {
  std::string name = "sweep";
  std::string objective;  // parse_objective syntax
  NoiseModel noise;
  std::vector<SweepAlgo> algos;
  std::vector<std::int64_t> horizons;
  int replicates = 1;
  double kappa = 1.0;
  bool write_traces = true;
};

/// Parses the sweep.json schema. The objective may be a string in
/// parse_objective syntax or an object {"kind": "quad", "center": ...}.
/// One algo entry: a variant name or {variant, label, overrides...}.
SweepAlgo parse_algo(const nlohmann::json& j, double kappa);

SweepConfig parse_sweep_config(const nlohmann::json& j);

struct CellResult {
  std::string algo;
  std::int64_t T = 0;
  int replicate = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  double cum_regret = 0.0;
  double first_estimate_share = 0.0;
  std::int64_t guard_events = 0;
  std::string config_digest;
};

struct SweepPoint {
  std::int64_t T;
  double mean;
  double std;
  int count;
};

/// Per-algorithm aggregate across horizons.
struct SweepResult {
  std::string algo;
  std::vector<SweepPoint> points;
  std::vector<std::int64_t> excluded;
  std::optional<SlopeFit> fit;
  std::string fit_error;
};

struct SweepReport {
  std::string name;
  double kappa = 1.0;
  std::vector<SweepResult> algos;
  std::vector<CellResult> cells;
  std::int64_t failures = 0;
};

struct SweepOptions {
  int workers = 1;
  std::optional<std::filesystem::path> out_dir;
};

/// Runs every (algo, T, replicate) cell with seed noise.seed + replicate,
/// aggregates per (algo, T), and fits slopes. With an output directory,
/// writes out/<name>/<algo>/<T>/<seed>/{run.json,trace.csv}, sweep.csv,
/// cells.csv, per-algorithm summary.json and a top-level summary.json.
/// Cell failures are recorded, never thrown.
SweepReport run_sweep(const SweepConfig& config, const SweepOptions& options = {});

/// Mean and sample standard deviation (0 for a single value).
std::pair<double, double> mean_std(std::span<const double> values);

}  // namespace monobandit
