#include "monobandit/objective.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace monobandit {
namespace {

constexpr double kStationaryTolerance = 1e-12;
constexpr double kCertifyTolerance = 1e-9;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

double parse_number(std::string_view key, std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument("objective: bad value for '" + std::string(key) +
                                "': " + std::string(text));
  }
  return value;
}

}  // namespace

ObjectiveSpec::ObjectiveSpec(double p_min, double p_max, double x_star,
                             double alpha, double beta, ScalarFn eval,
                             ScalarFn grad, std::string label)
    : p_min_(p_min),
      p_max_(p_max),
      x_star_(x_star),
      alpha_(alpha),
      beta_(beta),
      eval_(std::move(eval)),
      grad_(std::move(grad)),
      f_star_(0.0),
      label_(std::move(label)) {
  if (!(p_min_ < p_max_)) {
    throw std::invalid_argument("objective: need p_min < p_max");
  }
  if (!(p_min_ < x_star_ && x_star_ < p_max_)) {
    throw std::invalid_argument("objective: minimizer " + fmt(x_star_) +
                                " must lie strictly inside [" + fmt(p_min_) +
                                ", " + fmt(p_max_) + "]");
  }
  if (!(alpha_ > 0.0 && alpha_ <= beta_)) {
    throw std::invalid_argument("objective: need 0 < alpha <= beta");
  }
  if (!eval_ || !grad_) {
    throw std::invalid_argument("objective: eval and grad are required");
  }
  if (std::abs(grad_(x_star_)) > kStationaryTolerance) {
    throw std::invalid_argument("objective: gradient at x_star is " +
                                fmt(grad_(x_star_)) + ", not zero");
  }
  f_star_ = eval_(x_star_);
}

ObjectiveSpec ObjectiveSpec::with_constants(double alpha, double beta) const {
  return ObjectiveSpec(p_min_, p_max_, x_star_, alpha, beta, eval_, grad_,
                       label_ + ",alpha=" + fmt(alpha) + ",beta=" + fmt(beta));
}

ObjectiveSpec make_quadratic(double center, double curvature, double p_min,
                             double p_max) {
  if (!(curvature > 0.0)) {
    throw std::invalid_argument("make_quadratic: curvature must be positive");
  }
  if (!(p_min < center && center < p_max)) {
    throw std::invalid_argument("make_quadratic: center must lie in (p_min, p_max)");
  }
  auto eval = [center, curvature](double x) {
    const double r = x - center;
    return curvature * r * r;
  };
  auto grad = [center, curvature](double x) { return 2.0 * curvature * (x - center); };
  const double k = 2.0 * curvature;
  return ObjectiveSpec(p_min, p_max, center, k, k, eval, grad,
                       "quad:center=" + fmt(center) + ",curv=" + fmt(curvature) +
                           ",lo=" + fmt(p_min) + ",hi=" + fmt(p_max));
}

ObjectiveSpec make_quartic_blend(double center, double a, double b, double p_min,
                                 double p_max) {
  if (!(a > 0.0)) {
    throw std::invalid_argument("make_quartic_blend: a must be positive");
  }
  if (!(b >= 0.0)) {
    throw std::invalid_argument("make_quartic_blend: b must be non-negative");
  }
  if (!(p_min < center && center < p_max)) {
    throw std::invalid_argument("make_quartic_blend: center must lie in (p_min, p_max)");
  }
  auto eval = [center, a, b](double x) {
    const double r = x - center;
    const double r2 = r * r;
    return a * r2 + b * r2 * r2;
  };
  auto grad = [center, a, b](double x) {
    const double r = x - center;
    return 2.0 * a * r + 4.0 * b * r * r * r;
  };
  const double r_max = std::max(center - p_min, p_max - center);
  const double alpha = 2.0 * a;
  const double beta = 2.0 * a + 12.0 * b * r_max * r_max;
  return ObjectiveSpec(p_min, p_max, center, alpha, beta, eval, grad,
                       "quartic:center=" + fmt(center) + ",a=" + fmt(a) +
                           ",b=" + fmt(b) + ",lo=" + fmt(p_min) + ",hi=" + fmt(p_max));
}

ObjectiveSpec parse_objective(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view family = text.substr(0, colon);
  std::map<std::string, double, std::less<>> kv;
  if (colon != std::string_view::npos) {
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) {
        throw std::invalid_argument("objective: expected key=value, got '" +
                                    std::string(item) + "'");
      }
      const std::string_view key = item.substr(0, eq);
      kv[std::string(key)] = parse_number(key, item.substr(eq + 1));
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
  }
  auto take = [&](const char* key, std::optional<double> fallback = std::nullopt) {
    auto it = kv.find(key);
    if (it == kv.end()) {
      if (fallback) return *fallback;
      throw std::invalid_argument("objective: missing '" + std::string(key) + "'");
    }
    const double v = it->second;
    kv.erase(it);
    return v;
  };

  std::optional<ObjectiveSpec> spec;
  if (family == "quad" || family == "quadratic") {
    const double center = take("center");
    const double curv = take("curv", 1.0);
    spec.emplace(make_quadratic(center, curv, take("lo"), take("hi")));
  } else if (family == "quartic") {
    const double center = take("center");
    const double a = take("a");
    const double b = take("b", 0.0);
    spec.emplace(make_quartic_blend(center, a, b, take("lo"), take("hi")));
  } else {
    throw std::invalid_argument("objective: unknown family '" + std::string(family) +
                                "' (expected quad or quartic)");
  }

  const auto alpha = kv.find("alpha");
  const auto beta = kv.find("beta");
  if (alpha != kv.end() || beta != kv.end()) {
    const double a = alpha != kv.end() ? alpha->second : spec->alpha();
    const double b = beta != kv.end() ? beta->second : spec->beta();
    kv.erase("alpha");
    kv.erase("beta");
    spec.emplace(spec->with_constants(a, b));
  }
  if (!kv.empty()) {
    throw std::invalid_argument("objective: unknown key '" + kv.begin()->first + "'");
  }
  return *spec;
}

Certificate certify(const ObjectiveSpec& spec, int grid_points) {
  if (grid_points < 3) {
    throw std::invalid_argument("certify: need at least 3 grid points");
  }
  const int n = grid_points;
  const double lo = spec.p_min();
  const double step = (spec.p_max() - lo) / (n - 1);
  std::vector<double> xs(static_cast<std::size_t>(n));
  std::vector<double> gs(xs.size());
  for (int i = 0; i < n; ++i) {
    xs[i] = i == n - 1 ? spec.p_max() : lo + step * i;
    gs[i] = spec.grad(xs[i]);
  }

  double min_q = std::numeric_limits<double>::infinity();
  double max_q = -std::numeric_limits<double>::infinity();
  std::pair<double, double> min_pair, max_pair;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double q = (gs[j] - gs[i]) / (xs[j] - xs[i]);
      if (q < min_q) {
        min_q = q;
        min_pair = {xs[i], xs[j]};
      }
      if (q > max_q) {
        max_q = q;
        max_pair = {xs[i], xs[j]};
      }
    }
  }

  if (spec.alpha() > min_q + kCertifyTolerance) {
    throw CertificationFailure("certify: declared alpha " + fmt(spec.alpha()) +
                               " exceeds gradient quotient " + fmt(min_q) +
                               " on pair (" + fmt(min_pair.first) + ", " +
                               fmt(min_pair.second) + ")");
  }
  if (max_q > spec.beta() + kCertifyTolerance) {
    throw CertificationFailure("certify: gradient quotient " + fmt(max_q) +
                               " exceeds declared beta " + fmt(spec.beta()) +
                               " on pair (" + fmt(max_pair.first) + ", " +
                               fmt(max_pair.second) + ")");
  }
  return {min_q, max_q};
}

}  // namespace monobandit
