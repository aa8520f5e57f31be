#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "monobandit/noise.hpp"
#include "monobandit/objective.hpp"
#include "monobandit/trace.hpp"

namespace monobandit {

class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MonotonicityViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OutOfDomain : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// strict rejects a query below the high-water mark, lenient clamps it up and
/// logs guard_clamp, off disables the audit (non-monotone baselines).
enum class MonotonicityMode { strict, lenient, off };

/// Budgeted noisy evaluation of an objective with a monotonicity audit.
///
/// Every query consumes one unit of budget and appends one trace entry
/// annotated with the current phase and lag. An event set with `mark`
/// attaches to the next entry only.
class Oracle {
 public:
  Oracle(ObjectiveSpec spec, NoiseModel noise, std::int64_t budget,
         MonotonicityMode mode = MonotonicityMode::strict,
         bool retain_observations = true);

  double query(double x);

  /// Draws n samples at x and returns their mean. If fewer than n remain,
  /// spends what is left, marks the last entry budget_exhausted, and throws
  /// BudgetExhausted.
  double sample_mean(double x, std::int64_t n);

  void annotate(int phase, double lag) {
    phase_ = phase;
    lag_ = lag;
  }
  void mark(Event event) { pending_ = event; }

  std::int64_t budget() const { return budget_; }
  std::int64_t used() const { return trace_.size(); }
  std::int64_t remaining() const { return budget_ - trace_.size(); }
  bool fits(std::int64_t n) const { return n <= remaining(); }

  /// Largest point queried so far; p_min before the first query.
  double high_water() const { return high_water_; }
  std::int64_t guard_clamps() const { return guard_clamps_; }

  MonotonicityMode mode() const { return mode_; }
  const ObjectiveSpec& spec() const { return spec_; }
  const NoiseModel& noise() const { return noise_.model(); }
  const Trace& trace() const { return trace_; }
  Trace take_trace() { return std::move(trace_); }

 private:
  double admit(double x);
  Event consume_event();

  ObjectiveSpec spec_;
  NoiseSource noise_;
  std::int64_t budget_;
  MonotonicityMode mode_;
  Trace trace_;
  double high_water_;
  bool any_query_ = false;
  int phase_ = 0;
  double lag_ = 0.0;
  Event pending_ = Event::sample;
  std::int64_t guard_clamps_ = 0;
  std::vector<double> scratch_;
};

}  // namespace monobandit
