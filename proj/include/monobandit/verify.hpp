#pragma once

#include <string>
#include <vector>

namespace monobandit {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

/// The module invariants as a self-contained property suite, sized to run in
/// a few seconds. Used by `monobandit verify`.
std::vector<CheckResult> run_property_suite();

}  // namespace monobandit
