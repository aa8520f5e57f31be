#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "monobandit/algorithms.hpp"
#include "monobandit/regret.hpp"
#include "monobandit/sweep.hpp"

namespace monobandit {

nlohmann::json to_json(const ResolvedConfig& config);
nlohmann::json to_json(const NoiseModel& noise);
nlohmann::json to_json(const RunResult& run, const ObjectiveSpec& spec,
                       const NoiseModel& noise);
nlohmann::json to_json(const ValidationSummary& v);
nlohmann::json to_json(const SweepResult& result, double kappa);

/// FNV-1a over the canonical JSON dump, as 16 hex digits.
std::string config_digest(const ResolvedConfig& config);

/// Formats with 17 significant digits (round-trip exact).
std::string format_double(double v);

}  // namespace monobandit
