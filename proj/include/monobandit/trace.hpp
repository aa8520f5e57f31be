#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace monobandit {

enum class Event : std::uint8_t {
  sample,
  jump,
  lag_shrink,
  stabilize,
  guard_clamp,
  budget_exhausted,
};

std::string_view to_string(Event event);
Event event_from_string(std::string_view name);

struct TraceEntry {
  std::int64_t t;  // 1-based
  double x;
  double y;  // NaN when observations were not retained
  double inst_regret;
  int phase;
  double lag;
  Event event;
};

/// Append-only record of every sample taken by one run.
///
/// Consecutive plain samples at the same point and annotation are stored as
/// one segment, so a run that spends millions of samples averaging at a few
/// points costs a few hundred bytes. Individual observations are kept only
/// when `retain_observations` is set.
class Trace {
 public:
  struct Segment {
    std::int64_t t_begin;
    std::int64_t count;
    double x;
    double inst_regret;
    int phase;
    double lag;
    Event event;  // event of the first entry; the rest are plain samples
  };

  explicit Trace(bool retain_observations = true)
      : retain_(retain_observations) {}

  void append(double x, double y, double inst_regret, int phase, double lag,
              Event event);
  /// `count` samples at one point. `ys`, when retained, must hold `count`
  /// observations.
  void append_run(double x, std::span<const double> ys, std::int64_t count,
                  double inst_regret, int phase, double lag, Event event);

  /// Replaces the event of the most recent entry.
  void mark_last(Event event);

  std::int64_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  bool retains_observations() const { return retain_; }
  std::span<const Segment> segments() const { return segments_; }

  TraceEntry entry(std::int64_t t) const;
  TraceEntry back() const { return entry(size_); }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (const Segment& s : segments_) {
      for (std::int64_t k = 0; k < s.count; ++k) {
        const std::int64_t t = s.t_begin + k;
        fn(TraceEntry{t, s.x, observation(t), s.inst_regret, s.phase, s.lag,
                      k == 0 ? s.event : Event::sample});
      }
    }
  }

  /// Entries of `first` followed by those of `second`, renumbered.
  static Trace concat(const Trace& first, const Trace& second);

  /// Header `t,x,y,inst_regret,phase,lag,event`, 17 significant digits.
  void write_csv(std::ostream& os) const;
  static Trace read_csv(std::istream& is);

 private:
  double observation(std::int64_t t) const {
    return retain_ ? ys_[static_cast<std::size_t>(t - 1)]
                   : std::numeric_limits<double>::quiet_NaN();
  }

  bool retain_;
  std::int64_t size_ = 0;
  std::vector<Segment> segments_;
  std::vector<double> ys_;
};

}  // namespace monobandit
