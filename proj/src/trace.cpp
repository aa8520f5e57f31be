#include "monobandit/trace.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace monobandit {

std::string_view to_string(Event event) {
  switch (event) {
    case Event::sample: return "sample";
    case Event::jump: return "jump";
    case Event::lag_shrink: return "lag_shrink";
    case Event::stabilize: return "stabilize";
    case Event::guard_clamp: return "guard_clamp";
    case Event::budget_exhausted: return "budget_exhausted";
  }
  return "sample";
}

Event event_from_string(std::string_view name) {
  for (Event e : {Event::sample, Event::jump, Event::lag_shrink, Event::stabilize,
                  Event::guard_clamp, Event::budget_exhausted}) {
    if (to_string(e) == name) return e;
  }
  throw std::invalid_argument("unknown trace event '" + std::string(name) + "'");
}

void Trace::append(double x, double y, double inst_regret, int phase, double lag,
                   Event event) {
  append_run(x, std::span<const double>(&y, 1), 1, inst_regret, phase, lag, event);
}

void Trace::append_run(double x, std::span<const double> ys, std::int64_t count,
                       double inst_regret, int phase, double lag, Event event) {
  if (count <= 0) return;
  if (retain_) {
    if (static_cast<std::int64_t>(ys.size()) != count) {
      throw std::invalid_argument("trace: observation count mismatch");
    }
    ys_.insert(ys_.end(), ys.begin(), ys.end());
  }
  if (event == Event::sample && !segments_.empty()) {
    Segment& last = segments_.back();
    if (last.x == x && last.phase == phase && last.lag == lag) {
      last.count += count;
      size_ += count;
      return;
    }
  }
  if (event == Event::sample) {
    segments_.push_back({size_ + 1, count, x, inst_regret, phase, lag, event});
    size_ += count;
    return;
  }
  segments_.push_back({size_ + 1, 1, x, inst_regret, phase, lag, event});
  size_ += 1;
  if (count > 1) {
    segments_.push_back({size_ + 1, count - 1, x, inst_regret, phase, lag, Event::sample});
    size_ += count - 1;
  }
}

void Trace::mark_last(Event event) {
  if (segments_.empty()) return;
  Segment& last = segments_.back();
  if (last.count == 1) {
    last.event = event;
    return;
  }
  last.count -= 1;
  segments_.push_back({size_, 1, last.x, last.inst_regret, last.phase, last.lag, event});
}

TraceEntry Trace::entry(std::int64_t t) const {
  if (t < 1 || t > size_) {
    throw std::out_of_range("trace: index " + std::to_string(t) + " out of range");
  }
  auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                             [](std::int64_t v, const Segment& s) { return v < s.t_begin; });
  const Segment& s = *std::prev(it);
  return {t, s.x, observation(t), s.inst_regret, s.phase, s.lag,
          t == s.t_begin ? s.event : Event::sample};
}

Trace Trace::concat(const Trace& first, const Trace& second) {
  Trace out(first.retain_ && second.retain_);
  auto copy = [&out](const Trace& src) {
    src.for_each([&out](const TraceEntry& e) {
      out.append(e.x, e.y, e.inst_regret, e.phase, e.lag, e.event);
    });
  };
  copy(first);
  copy(second);
  return out;
}

void Trace::write_csv(std::ostream& os) const {
  os << "t,x,y,inst_regret,phase,lag,event\n";
  char buf[256];
  for_each([&](const TraceEntry& e) {
    const std::string_view ev = to_string(e.event);
    std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g,%.17g,%d,%.17g,%.*s\n",
                  static_cast<long long>(e.t), e.x, e.y, e.inst_regret, e.phase,
                  e.lag, static_cast<int>(ev.size()), ev.data());
    os << buf;
  });
}

Trace Trace::read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "t,x,y,inst_regret,phase,lag,event") {
    throw std::invalid_argument("trace csv: unexpected header");
  }
  Trace trace(true);
  std::int64_t expected = 1;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      cols.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (cols.size() != 7) {
      throw std::invalid_argument("trace csv: expected 7 columns");
    }
    if (std::stoll(cols[0]) != expected) {
      throw std::invalid_argument("trace csv: non-consecutive t");
    }
    ++expected;
    trace.append(std::strtod(cols[1].c_str(), nullptr), std::strtod(cols[2].c_str(), nullptr),
                 std::strtod(cols[3].c_str(), nullptr), std::stoi(cols[4]),
                 std::strtod(cols[5].c_str(), nullptr), event_from_string(cols[6]));
  }
  return trace;
}

}  // namespace monobandit
