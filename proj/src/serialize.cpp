#include "monobandit/serialize.hpp"

#include <cmath>
#include <cstdio>

namespace monobandit {
namespace {

using nlohmann::json;

void put(json& j, const char* key, double v) {
  if (!std::isnan(v)) j[key] = v;
}

json estimate_json(const SecantEstimate& e) {
  return {{"g", e.g},         {"x_lo", e.x_lo},       {"x_hi", e.x_hi},
          {"n_lo", e.n_lo},   {"n_hi", e.n_hi},       {"epsilon", e.epsilon},
          {"mean_lo", e.mean_lo}, {"mean_hi", e.mean_hi}};
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json to_json(const ResolvedConfig& c) {
  json j;
  j["variant"] = std::string(to_string(c.variant));
  j["T"] = c.T;
  put(j, "delta", c.delta);
  put(j, "delta1", c.delta1);
  put(j, "gamma", c.gamma);
  put(j, "epsilon", c.epsilon);
  if (c.n > 0) j["n"] = c.n;
  put(j, "q", c.q);
  put(j, "p", c.p);
  put(j, "eta", c.eta);
  put(j, "iota", c.iota);
  if (c.variant == Variant::adaptive_lgd) j["delta_floor"] = c.delta_floor;
  put(j, "kw_a", c.kw_a);
  put(j, "kw_c", c.kw_c);
  put(j, "kw_x1", c.kw_x1);
  j["kappa"] = c.kappa;
  j["deterministic"] = c.deterministic;
  j["lenient"] = c.lenient;
  return j;
}

json to_json(const NoiseModel& noise) {
  return {{"kind", std::string(to_string(noise.kind))},
          {"diameter", noise.diameter},
          {"seed", noise.seed}};
}

std::string config_digest(const ResolvedConfig& config) {
  const std::string text = to_json(config).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json to_json(const ValidationSummary& v) {
  return {{"monotone", v.monotone},
          {"monotonicity_violations", v.monotonicity_violations},
          {"overshoot_count", v.overshoot_count},
          {"max_overshoot", v.max_overshoot},
          {"guard_events", v.guard_events},
          {"contraction_bound", v.contraction_bound},
          {"contraction_factors", v.contraction_factors},
          {"contractions_ok", v.contractions_ok},
          {"bracket_clean", v.bracket_clean},
          {"bracket_failures", v.bracket_failures},
          {"phases_ok", v.phases_ok},
          {"stopping_bound_ok", v.stopping_bound_ok}};
}

json to_json(const RunResult& run, const ObjectiveSpec& spec, const NoiseModel& noise) {
  const RegretReport report = regret_report(run, spec);
  json j;
  j["version"] = kSchemaVersion;
  j["algo"] = report.algo;
  j["objective"] = spec.label();
  j["T"] = report.T;
  j["seed"] = run.seed;
  j["kappa"] = report.kappa;
  j["config"] = to_json(run.config);
  j["config_digest"] = report.config_digest;
  j["noise"] = to_json(noise);
  j["cum_regret"] = report.cum_regret;
  j["final_x"] = run.final_x;
  j["terminated_by"] = std::string(to_string(run.terminated_by));
  j["first_estimate_samples"] = run.first_estimate_samples;
  j["guard_events"] = run.guard_events;
  j["violations"] = {{"monotonicity", report.violations.monotonicity},
                     {"guard", report.violations.guard},
                     {"overshoot", report.violations.overshoot}};

  json jumps = json::array();
  for (const auto& jp : run.jumps) {
    jumps.push_back({{"from_x", jp.from_x},
                     {"to_x", jp.to_x},
                     {"lag", jp.lag},
                     {"lag_index", jp.lag_index},
                     {"g", jp.estimate.g},
                     {"clamped", jp.clamped}});
  }
  j["jumps"] = std::move(jumps);

  json phases = json::array();
  for (const auto& ph : run.phases) {
    phases.push_back({{"index", ph.index},
                      {"lag_index", ph.lag_index},
                      {"lag", ph.lag},
                      {"first_iterate", ph.first_iterate}});
  }
  j["phases"] = std::move(phases);

  json estimates = json::array();
  for (const auto& rec : run.estimates) {
    json e = estimate_json(rec.estimate);
    e["kind"] = rec.kind == EstimateKind::lag_probe ? "lag_probe" : "jump_secant";
    estimates.push_back(std::move(e));
  }
  j["estimates"] = std::move(estimates);

  json steps = json::array();
  for (const auto& s : run.steps) {
    steps.push_back({{"from_x", s.from_x},
                     {"to_x", s.to_x},
                     {"mean_here", s.mean_here},
                     {"mean_next", s.mean_next},
                     {"advanced", s.advanced}});
  }
  j["steps"] = std::move(steps);
  j["validation"] = to_json(validate_run(run, spec));
  return j;
}

json to_json(const SweepResult& r, double kappa) {
  json j;
  j["version"] = kSchemaVersion;
  j["algo"] = r.algo;
  if (r.fit) {
    j["slope"] = r.fit->slope;
    j["intercept"] = r.fit->intercept;
    j["r2"] = r.fit->r2;
  } else {
    j["slope"] = nullptr;
    j["intercept"] = nullptr;
    j["r2"] = nullptr;
    j["fit_error"] = r.fit_error;
  }
  json points = json::array();
  for (const auto& p : r.points) points.push_back({p.T, p.mean, p.std});
  j["points"] = std::move(points);
  j["counts"] = json::array();
  for (const auto& p : r.points) j["counts"].push_back(p.count);
  j["excluded"] = r.excluded;
  j["exclusion_rule"] = {{"first_estimate_share_above", kPreAsymptoticShare},
                         {"aggregate", "max over replicates"}};
  j["kappa"] = kappa;
  return j;
}

}  // namespace monobandit
