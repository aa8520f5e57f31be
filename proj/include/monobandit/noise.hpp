#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace monobandit {

/// Seedable 64-bit generator. `split` derives an independent stream so a
/// component can own its randomness without sharing state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(mix(seed)) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits. Bit-identical on every platform,
  /// unlike std::uniform_real_distribution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  Rng split() { return Rng(engine_() ^ 0x9e3779b97f4a7c15ULL); }

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

enum class NoiseKind { none, uniform_pm_half, rademacher_half, custom_bounded };

std::string_view to_string(NoiseKind kind);
NoiseKind noise_kind_from_string(std::string_view name);

/// Zero-mean observation noise with bounded support.
///
/// uniform_pm_half draws from [-d/2, d/2] and rademacher_half from {-d/2, d/2}
/// where d is `diameter`. custom_bounded calls `sampler` and checks every
/// draw against [support_lo, support_lo + diameter].
struct NoiseModel {
  NoiseKind kind = NoiseKind::uniform_pm_half;
  double diameter = 1.0;
  std::uint64_t seed = 0;
  std::function<double(Rng&)> sampler;
  double support_lo = -0.5;

  static NoiseModel none() { return {NoiseKind::none, 0.0, 0, {}, 0.0}; }
  static NoiseModel uniform(std::uint64_t seed, double diameter = 1.0) {
    return {NoiseKind::uniform_pm_half, diameter, seed, {}, -diameter / 2};
  }
  static NoiseModel rademacher(std::uint64_t seed, double diameter = 1.0) {
    return {NoiseKind::rademacher_half, diameter, seed, {}, -diameter / 2};
  }

  NoiseModel with_seed(std::uint64_t s) const {
    NoiseModel copy = *this;
    copy.seed = s;
    return copy;
  }

  void validate() const;
};

/// Stateful sampler for one NoiseModel; owns its generator.
class NoiseSource {
 public:
  explicit NoiseSource(NoiseModel model);

  double draw();
  /// Sum of n draws. Faster than n calls to draw() for the built-in kinds.
  double draw_sum(std::int64_t n, std::vector<double>* out = nullptr);

  const NoiseModel& model() const { return model_; }

 private:
  NoiseModel model_;
  Rng rng_;
};

}  // namespace monobandit
