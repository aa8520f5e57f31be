#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "monobandit/algorithms.hpp"
#include "monobandit/objective.hpp"
#include "monobandit/trace.hpp"

namespace monobandit {

struct ViolationCounts {
  std::int64_t monotonicity = 0;
  std::int64_t guard = 0;
  std::int64_t overshoot = 0;
};

struct RegretReport {
  std::int64_t T = 0;
  double cum_regret = 0.0;
  std::string inst_series_path;
  std::string algo;
  std::string config_digest;
  std::uint64_t seed = 0;
  double kappa = 1.0;
  ViolationCounts violations;
};

/// Sum of f(x) - f(x*) over every entry, from the analytic objective.
RegretReport cumulative_regret(const Trace& trace, const ObjectiveSpec& spec);
/// Same, with the run's algorithm, seed, kappa and digest filled in.
RegretReport regret_report(const RunResult& run, const ObjectiveSpec& spec);

struct ValidationSummary {
  bool monotone = true;
  std::int64_t monotonicity_violations = 0;
  std::int64_t overshoot_count = 0;
  double max_overshoot = 0.0;
  std::int64_t guard_events = 0;

  // Filled by validate_run only.
  double contraction_bound = 1.0;  // 1 - 2 alpha c
  std::vector<double> contraction_factors;
  bool contractions_ok = true;
  bool bracket_clean = true;
  std::int64_t bracket_failures = 0;
  bool phases_ok = true;
  bool stopping_bound_ok = true;
};

/// Trace-only checks: monotonicity and overshoot. Never throws.
ValidationSummary validate_trace(const Trace& trace, const ObjectiveSpec& spec);

/// Adds the run-level checks: per-jump contraction h_{t+1} <= (1 - 2 alpha c)
/// h_t, bracket replay of every recorded estimate against the analytic
/// gradient, adaptive phase structure, and the noiseless stopping bound.
ValidationSummary validate_run(const RunResult& run, const ObjectiveSpec& spec);

/// c = 1/(2 beta) - 1/((1 + gamma) beta).
double contraction_constant(double beta, double gamma);

struct SlopeFit {
  double slope;
  double intercept;
  double r2;
};

/// Least squares on (ln T, ln regret). Needs at least three distinct T;
/// regret values are floored at 1e-12.
SlopeFit fit_regret_slope(std::span<const std::pair<double, double>> points);

}  // namespace monobandit
