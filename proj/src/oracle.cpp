#include "monobandit/oracle.hpp"

#include <algorithm>
#include <sstream>
#include <string>

namespace monobandit {
namespace {

std::string describe(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

Oracle::Oracle(ObjectiveSpec spec, NoiseModel noise, std::int64_t budget,
               MonotonicityMode mode, bool retain_observations)
    : spec_(std::move(spec)),
      noise_(std::move(noise)),
      budget_(budget),
      mode_(mode),
      trace_(retain_observations),
      high_water_(spec_.p_min()) {
  if (budget_ <= 0) {
    throw std::invalid_argument("oracle: budget must be positive");
  }
}

Event Oracle::consume_event() {
  const Event e = pending_;
  pending_ = Event::sample;
  return e;
}

double Oracle::admit(double x) {
  if (!(x >= spec_.p_min() && x <= spec_.p_max())) {
    throw OutOfDomain("oracle: query " + describe(x) + " outside [" +
                      describe(spec_.p_min()) + ", " + describe(spec_.p_max()) + "]");
  }
  if (any_query_ && x < high_water_) {
    if (mode_ == MonotonicityMode::strict) {
      throw MonotonicityViolation("oracle: query " + describe(x) +
                                  " below high-water mark " + describe(high_water_));
    }
    if (mode_ == MonotonicityMode::lenient) {
      ++guard_clamps_;
      pending_ = Event::guard_clamp;
      x = high_water_;
    }
  }
  if (!any_query_ || x > high_water_) high_water_ = x;
  any_query_ = true;
  return x;
}

double Oracle::query(double x) {
  if (remaining() <= 0) {
    throw BudgetExhausted("oracle: budget of " + std::to_string(budget_) + " exhausted");
  }
  x = admit(x);
  const double fx = spec_.eval(x);
  const double y = noise_.model().kind == NoiseKind::none ? fx : fx + noise_.draw();
  trace_.append(x, y, fx - spec_.f_star(), phase_, lag_, consume_event());
  return y;
}

double Oracle::sample_mean(double x, std::int64_t n) {
  if (n <= 0) {
    throw std::invalid_argument("oracle: sample count must be positive");
  }
  if (remaining() <= 0) {
    throw BudgetExhausted("oracle: budget of " + std::to_string(budget_) + " exhausted");
  }
  x = admit(x);
  const std::int64_t take = std::min(n, remaining());
  const double fx = spec_.eval(x);
  const bool keep = trace_.retains_observations();
  double noise_sum = noise_.draw_sum(take, keep ? &scratch_ : nullptr);
  if (keep && noise_.model().kind != NoiseKind::none) {
    for (double& e : scratch_) e += fx;
  } else if (keep) {
    for (double& e : scratch_) e = fx;
  }
  trace_.append_run(x, scratch_, take, fx - spec_.f_star(), phase_, lag_, consume_event());
  if (take < n) {
    trace_.mark_last(Event::budget_exhausted);
    throw BudgetExhausted("oracle: budget ran out after " + std::to_string(take) + " of " +
                          std::to_string(n) + " samples at " + describe(x));
  }
  return fx + noise_sum / static_cast<double>(take);
}

}  // namespace monobandit
