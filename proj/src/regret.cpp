#include "monobandit/regret.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "monobandit/serialize.hpp"

namespace monobandit {
namespace {

// Neumaier compensated sum.
class Accumulator {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

constexpr double kRelTol = 1e-12;

bool within(double lhs, double rhs) {
  return lhs <= rhs + kRelTol * std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

}  // namespace

RegretReport cumulative_regret(const Trace& trace, const ObjectiveSpec& spec) {
  Accumulator acc;
  for (const auto& s : trace.segments()) {
    acc.add(static_cast<double>(s.count) * spec.inst_regret(s.x));
  }
  RegretReport r;
  r.T = trace.size();
  r.cum_regret = acc.value();
  return r;
}

RegretReport regret_report(const RunResult& run, const ObjectiveSpec& spec) {
  RegretReport r = cumulative_regret(run.trace, spec);
  r.algo = std::string(to_string(run.config.variant));
  r.config_digest = config_digest(run.config);
  r.seed = run.seed;
  r.kappa = run.config.kappa;
  const ValidationSummary v = validate_trace(run.trace, spec);
  r.violations.monotonicity = v.monotonicity_violations;
  r.violations.guard = run.guard_events;
  r.violations.overshoot = v.overshoot_count;
  return r;
}

double contraction_constant(double beta, double gamma) {
  return 1.0 / (2.0 * beta) - 1.0 / ((1.0 + gamma) * beta);
}

ValidationSummary validate_trace(const Trace& trace, const ObjectiveSpec& spec) {
  ValidationSummary v;
  bool first = true;
  double high = 0.0;
  for (const auto& s : trace.segments()) {
    if (!first && s.x < high) {
      v.monotone = false;
      ++v.monotonicity_violations;
    }
    high = first ? s.x : std::max(high, s.x);
    first = false;
    if (s.x > spec.x_star()) {
      v.overshoot_count += s.count;
      v.max_overshoot = std::max(v.max_overshoot, s.x - spec.x_star());
    }
    if (s.event == Event::guard_clamp) ++v.guard_events;
  }
  return v;
}

ValidationSummary validate_run(const RunResult& run, const ObjectiveSpec& spec) {
  ValidationSummary v = validate_trace(run.trace, spec);
  const ResolvedConfig& c = run.config;
  const double beta = spec.beta();

  for (const auto& rec : run.estimates) {
    const SecantEstimate& e = rec.estimate;
    const bool ok = within(spec.grad(e.x_lo), e.g) && within(e.g, spec.grad(e.x_hi));
    if (!ok) {
      v.bracket_clean = false;
      ++v.bracket_failures;
    }
  }

  if (!std::isnan(c.gamma)) {
    v.contraction_bound = 1.0 - 2.0 * spec.alpha() * contraction_constant(beta, c.gamma);
    for (const auto& j : run.jumps) {
      const double h0 = spec.inst_regret(j.from_x);
      const double h1 = spec.inst_regret(j.to_x);
      if (h0 <= 0.0) continue;
      v.contraction_factors.push_back(h1 / h0);
      if (!within(h1, v.contraction_bound * h0)) v.contractions_ok = false;
    }
  }

  // A phase entered at lag index i > 1 means the probe at i - 1 failed there,
  // so the gradient at its first iterate is already small.
  if (c.variant == Variant::adaptive_lgd && v.bracket_clean && v.overshoot_count == 0) {
    for (const auto& ph : run.phases) {
      if (ph.lag_index <= 1) continue;
      const double prev_lag = c.delta1 * std::pow(c.q, ph.lag_index - 2);
      if (!within(std::abs(spec.grad(ph.first_iterate)), beta * (2.0 + c.gamma) * prev_lag)) {
        v.phases_ok = false;
      }
    }
  }

  const bool fixed_lag = c.variant == Variant::lgd_noiseless || c.variant == Variant::static_lgd;
  if (fixed_lag && v.bracket_clean && run.terminated_by == Termination::stabilized) {
    v.stopping_bound_ok =
        within(std::abs(spec.grad(run.final_x)), beta * (1.0 + c.gamma) * c.delta);
  }
  return v;
}

SlopeFit fit_regret_slope(std::span<const std::pair<double, double>> points) {
  std::set<double> distinct;
  for (const auto& [T, R] : points) {
    if (!(T > 0.0)) throw std::invalid_argument("slope fit: T must be positive");
    distinct.insert(T);
  }
  if (distinct.size() < 3) {
    throw std::invalid_argument("slope fit: need at least three distinct horizons");
  }
  const double n = static_cast<double>(points.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [T, R] : points) {
    mx += std::log(T);
    my += std::log(std::max(R, 1e-12));
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [T, R] : points) {
    const double dx = std::log(T) - mx;
    const double dy = std::log(std::max(R, 1e-12)) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double r2 = 1.0;
  if (syy > 0.0) r2 = (sxy * sxy) / (sxx * syy);
  return {slope, intercept, r2};
}

}  // namespace monobandit
