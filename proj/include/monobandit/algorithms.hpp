#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "monobandit/estimator.hpp"
#include "monobandit/noise.hpp"
#include "monobandit/objective.hpp"
#include "monobandit/oracle.hpp"
#include "monobandit/trace.hpp"

namespace monobandit {

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Variant { lgd_noiseless, static_lgd, adaptive_lgd, hybrid_lgd, kw_baseline };

std::string_view to_string(Variant v);
/// Accepts the enum names and the CLI short forms lgd|static|adaptive|hybrid|kw.
Variant variant_from_string(std::string_view name);

/// Parameter bundle for one run. Unset fields take the horizon-dependent
/// defaults for the chosen variant (see resolve).
struct AlgoConfig {
  Variant variant = Variant::adaptive_lgd;
  std::int64_t T = 0;
  std::optional<double> delta;
  std::optional<double> delta1;
  std::optional<double> gamma;
  std::optional<double> epsilon;
  std::optional<std::int64_t> n;
  std::optional<double> q;
  std::optional<double> p;
  std::optional<double> eta;
  std::optional<double> iota;
  std::optional<double> delta_floor;
  std::optional<double> kw_a;
  std::optional<double> kw_c;
  std::optional<double> kw_x1;
  double kappa = 1.0;
  bool deterministic = false;
  bool lenient = false;
};

/// AlgoConfig with every field the variant uses filled in. Unused fields
/// are NaN (or 0 for n).
struct ResolvedConfig {
  Variant variant;
  std::int64_t T;
  double delta;
  double delta1;
  double gamma;
  double epsilon;
  std::int64_t n;
  double q;
  double p;
  double eta;
  double iota;
  double delta_floor;  // 0 = budget-driven floor only
  double kw_a;
  double kw_c;
  double kw_x1;
  double kappa;
  bool deterministic;
  bool lenient;

  SamplingPolicy policy() const { return {kappa, deterministic}; }
};

/// Fills defaults and checks the variant's preconditions. Throws
/// PreconditionError.
ResolvedConfig resolve(const AlgoConfig& config, const ObjectiveSpec& spec);

enum class Termination { budget, stabilized, guard };
std::string_view to_string(Termination t);

enum class EstimateKind { jump_secant, lag_probe };

struct EstimateRecord {
  EstimateKind kind;
  SecantEstimate estimate;
};

struct Jump {
  double from_x;
  double to_x;
  double lag;
  int lag_index;
  SecantEstimate estimate;
  bool clamped;
};

/// Adaptive runs: one record per maximal run of iterates sharing a lag.
struct Phase {
  int index;      // chronological, 1-based
  int lag_index;  // i of delta_i = q^(i-1) delta_1
  double lag;
  double first_iterate;
};

/// Constant-step comparisons of the hybrid's second stage.
struct ConstantStep {
  double from_x;
  double to_x;
  double mean_here;
  double mean_next;
  bool advanced;
};

struct RunResult {
  ResolvedConfig config;
  std::uint64_t seed = 0;
  Trace trace;
  double final_x = 0.0;
  std::vector<Jump> jumps;
  std::vector<Phase> phases;
  std::vector<EstimateRecord> estimates;
  std::vector<ConstantStep> steps;
  Termination terminated_by = Termination::budget;
  /// Samples spent until the first estimate was complete, or the whole
  /// budget if it never completed.
  std::int64_t first_estimate_samples = 0;
  std::int64_t guard_events = 0;
};

struct LgdParams {
  std::int64_t T;
  double delta;
  double gamma;
};

struct StaticLgdParams {
  std::int64_t T;
  std::int64_t n;
  double epsilon;
  double delta;
  double gamma;
};

struct AdaptiveLgdParams {
  std::int64_t T;
  double delta1;
  double gamma;
  double q;
  double p;
  SamplingPolicy policy;
  double delta_floor = 0.0;
};

struct HybridLgdParams {
  std::int64_t T;
  double delta;
  double eta;
  double iota;
  double gamma;
  double p;
  SamplingPolicy policy;
  std::optional<double> epsilon;  // default alpha delta^2 / 4
  std::optional<std::int64_t> n;  // default from epsilon and p
};

struct KwParams {
  std::int64_t T;
  double kw_a;
  double kw_c;
  double x1;
};

RunResult run_lgd_noiseless(const ObjectiveSpec& spec, const LgdParams& params);
RunResult run_static_lgd(const ObjectiveSpec& spec, const NoiseModel& noise,
                         const StaticLgdParams& params);
RunResult run_adaptive_lgd(const ObjectiveSpec& spec, const NoiseModel& noise,
                           const AdaptiveLgdParams& params);
RunResult run_hybrid_lgd(const ObjectiveSpec& spec, const NoiseModel& noise,
                         const HybridLgdParams& params);
RunResult run_kw_baseline(const ObjectiveSpec& spec, const NoiseModel& noise,
                          const KwParams& params);

/// Oracle-level entry points: the caller owns the oracle and its mode.
RunResult run_lgd_noiseless(Oracle& oracle, const LgdParams& params);
RunResult run_static_lgd(Oracle& oracle, const StaticLgdParams& params);
RunResult run_adaptive_lgd(Oracle& oracle, const AdaptiveLgdParams& params);
RunResult run_hybrid_lgd(Oracle& oracle, const HybridLgdParams& params);
RunResult run_kw_baseline(Oracle& oracle, const KwParams& params);

/// The hybrid's second stage on its own: from `start`, compare means at x
/// and x + eta with `samples` draws each and advance while the drop exceeds
/// iota. On halt, stays at the last point sampled (x + eta).
struct ConstantStepOutcome {
  double final_x;
  std::vector<ConstantStep> steps;
  Termination terminated_by;
};
ConstantStepOutcome constant_step_stage(Oracle& oracle, double start, double eta,
                                        double iota, std::int64_t samples);

/// Builds the oracle (strict for the monotone variants, unaudited for kw,
/// lenient when requested) and runs the configured variant.
RunResult run_algorithm(const ObjectiveSpec& spec, const NoiseModel& noise,
                        const AlgoConfig& config, bool retain_observations = true);

}  // namespace monobandit
