#include "monobandit/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace monobandit {

std::string_view to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::none: return "none";
    case NoiseKind::uniform_pm_half: return "uniform";
    case NoiseKind::rademacher_half: return "rademacher";
    case NoiseKind::custom_bounded: return "custom";
  }
  return "unknown";
}

NoiseKind noise_kind_from_string(std::string_view name) {
  if (name == "none") return NoiseKind::none;
  if (name == "uniform" || name == "uniform_pm_half") return NoiseKind::uniform_pm_half;
  if (name == "rademacher" || name == "rademacher_half") return NoiseKind::rademacher_half;
  if (name == "custom" || name == "custom_bounded") return NoiseKind::custom_bounded;
  throw std::invalid_argument("unknown noise kind '" + std::string(name) + "'");
}

void NoiseModel::validate() const {
  if (kind == NoiseKind::none) return;
  if (!(diameter > 0.0 && diameter <= 1.0)) {
    throw std::invalid_argument("noise: diameter must lie in (0, 1]");
  }
  if (kind == NoiseKind::custom_bounded && !sampler) {
    throw std::invalid_argument("noise: custom_bounded needs a sampler");
  }
}

NoiseSource::NoiseSource(NoiseModel model) : model_(std::move(model)), rng_(model_.seed) {
  model_.validate();
}

double NoiseSource::draw() {
  const double half = model_.diameter / 2.0;
  switch (model_.kind) {
    case NoiseKind::none:
      return 0.0;
    case NoiseKind::uniform_pm_half:
      return (rng_.uniform01() - 0.5) * model_.diameter;
    case NoiseKind::rademacher_half:
      return (rng_.next() >> 63) != 0 ? half : -half;
    case NoiseKind::custom_bounded: {
      const double e = model_.sampler(rng_);
      if (!(e >= model_.support_lo && e <= model_.support_lo + model_.diameter)) {
        throw std::domain_error("noise: custom draw outside declared support");
      }
      return e;
    }
  }
  return 0.0;
}

double NoiseSource::draw_sum(std::int64_t n, std::vector<double>* out) {
  if (model_.kind == NoiseKind::none) {
    if (out) out->assign(static_cast<std::size_t>(n), 0.0);
    return 0.0;
  }
  if (out) out->resize(static_cast<std::size_t>(n));
  double sum = 0.0;
  // Pairwise blocks keep the rounding error of long sums small.
  constexpr std::int64_t kBlock = 1024;
  for (std::int64_t start = 0; start < n; start += kBlock) {
    const std::int64_t end = std::min(n, start + kBlock);
    double block = 0.0;
    for (std::int64_t k = start; k < end; ++k) {
      const double e = draw();
      if (out) (*out)[static_cast<std::size_t>(k)] = e;
      block += e;
    }
    sum += block;
  }
  return sum;
}

}  // namespace monobandit
