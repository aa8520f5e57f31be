#include "monobandit/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace monobandit {
namespace {

constexpr double kSnap = 1e-9;

// Ceiling that ignores rounding noise: 32.000000000000007 counts as 32.
std::optional<std::int64_t> snapped_ceil(double v) {
  if (!(v < static_cast<double>(kMaxSamples))) return std::nullopt;
  const double fl = std::floor(v);
  const double out = (v - fl) <= kSnap * std::max(1.0, v) ? fl : std::ceil(v);
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(out));
}

double hoeffding_count(double epsilon, double p) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("sample count: epsilon must be positive");
  }
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("sample count: p must lie in (0, 1)");
  }
  return 2.0 * std::log(2.0 / p) / (epsilon * epsilon);
}

}  // namespace

double bias_offset(double alpha, double gap) { return alpha * gap * gap / 4.0; }

std::int64_t samples_for_precision(double epsilon, double p) {
  const auto n = snapped_ceil(hoeffding_count(epsilon, p));
  if (!n) {
    throw TooManySamples("sample count for epsilon " + std::to_string(epsilon) +
                         " exceeds 2^62");
  }
  return *n;
}

std::int64_t required_samples(double alpha, double gap, double p) {
  if (!(alpha > 0.0) || !(gap > 0.0)) {
    throw std::invalid_argument("required_samples: alpha and gap must be positive");
  }
  return samples_for_precision(bias_offset(alpha, gap), p);
}

std::optional<std::int64_t> policy_samples(double epsilon, double p,
                                           const SamplingPolicy& policy) {
  if (policy.deterministic) return 1;
  if (!(policy.kappa > 0.0 && policy.kappa <= 1.0)) {
    throw std::invalid_argument("sampling policy: kappa must lie in (0, 1]");
  }
  return snapped_ceil(policy.kappa * hoeffding_count(epsilon, p));
}

SecantEstimate biased_secant(double mean_lo, double mean_hi, double x_lo, double x_hi,
                             double offset) {
  if (!(x_lo < x_hi)) {
    throw std::invalid_argument("secant: need x_lo < x_hi");
  }
  const double g = (mean_hi - mean_lo + offset) / (x_hi - x_lo);
  return {g, x_lo, x_hi, 0, 0, offset, mean_lo, mean_hi};
}

SecantEstimate conservative_secant(double mean_lo, double mean_hi, double x_lo,
                                   double x_hi, double alpha) {
  if (!(x_lo < x_hi)) {
    throw std::invalid_argument("secant: need x_lo < x_hi");
  }
  return biased_secant(mean_lo, mean_hi, x_lo, x_hi, bias_offset(alpha, x_hi - x_lo));
}

SecantEstimate estimate_pair(Oracle& oracle, double x_lo, double x_hi, double p,
                             double alpha, const SamplingPolicy& policy) {
  if (!(x_lo < x_hi)) {
    throw std::invalid_argument("estimate_pair: need x_lo < x_hi");
  }
  const auto n = policy_samples(bias_offset(alpha, x_hi - x_lo), p, policy);
  if (!n) throw TooManySamples("estimate_pair: sample count exceeds 2^62");
  const double lo = oracle.sample_mean(x_lo, *n);
  const double hi = oracle.sample_mean(x_hi, *n);
  SecantEstimate est = conservative_secant(lo, hi, x_lo, x_hi, alpha);
  est.n_lo = *n;
  est.n_hi = *n;
  return est;
}

}  // namespace monobandit
