#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "monobandit/oracle.hpp"

namespace monobandit {

class TooManySamples : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scales the Hoeffding sample counts. kappa = 1 reproduces the theoretical
/// counts; deterministic forces one sample per point (noise-free replays).
struct SamplingPolicy {
  double kappa = 1.0;
  bool deterministic = false;
};

inline constexpr std::int64_t kMaxSamples = std::int64_t{1} << 62;

/// alpha * gap^2 / 4.
double bias_offset(double alpha, double gap);

/// ceil(2 ln(2/p) / epsilon^2): samples for a mean within epsilon/2 of the
/// truth with probability 1 - p under diameter-1 noise.
std::int64_t samples_for_precision(double epsilon, double p);

/// ceil(32 ln(2/p) / (alpha^2 gap^4)), i.e. samples_for_precision at
/// epsilon = bias_offset(alpha, gap).
std::int64_t required_samples(double alpha, double gap, double p);

/// Per-point count under a policy. Returns nullopt instead of throwing when
/// the count exceeds kMaxSamples.
std::optional<std::int64_t> policy_samples(double epsilon, double p,
                                           const SamplingPolicy& policy);

struct SecantEstimate {
  double g;
  double x_lo;
  double x_hi;
  std::int64_t n_lo;
  std::int64_t n_hi;
  double epsilon;
  double mean_lo;
  double mean_hi;
};

/// (mean_hi - mean_lo + offset) / (x_hi - x_lo).
SecantEstimate biased_secant(double mean_lo, double mean_hi, double x_lo,
                             double x_hi, double offset);

/// biased_secant with offset alpha (x_hi - x_lo)^2 / 4. With exact means
/// grad(x_lo) <= secant <= g <= grad(x_hi).
SecantEstimate conservative_secant(double mean_lo, double mean_hi, double x_lo,
                                   double x_hi, double alpha);

/// Samples x_lo then x_hi, each required_samples(alpha, gap, p) times (scaled
/// by the policy), and forms the conservative secant.
SecantEstimate estimate_pair(Oracle& oracle, double x_lo, double x_hi, double p,
                             double alpha, const SamplingPolicy& policy = {});

}  // namespace monobandit
