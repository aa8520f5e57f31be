#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "monobandit/algorithms.hpp"
#include "monobandit/objective.hpp"
#include "monobandit/regret.hpp"
#include "monobandit/serialize.hpp"
#include "monobandit/sweep.hpp"
#include "monobandit/verify.hpp"

namespace mb = monobandit;

namespace {

struct RunArgs {
  std::string algo = "adaptive";
  std::string objective = "quad:center=1,curv=1,lo=0,hi=2";
  std::int64_t T = 0;
  std::uint64_t seed = 0;
  std::string noise = "uniform";
  double noise_diameter = 1.0;
  std::string out;
  bool keep_observations = true;
  mb::AlgoConfig config;
};

template <typename T>
void optional_flag(CLI::App* app, const std::string& name, std::optional<T>& target,
                   const std::string& help) {
  app->add_option_function<T>(name, [&target](const T& v) { target = v; }, help);
}

int do_run(RunArgs& a) {
  const mb::ObjectiveSpec spec = mb::parse_objective(a.objective);
  mb::NoiseModel noise = mb::NoiseModel::uniform(a.seed, a.noise_diameter);
  noise.kind = mb::noise_kind_from_string(a.noise);
  if (noise.kind == mb::NoiseKind::none) noise = mb::NoiseModel::none().with_seed(a.seed);
  a.config.variant = mb::variant_from_string(a.algo);
  a.config.T = a.T;

  const mb::RunResult run = mb::run_algorithm(spec, noise, a.config, a.keep_observations);
  nlohmann::json j = mb::to_json(run, spec, noise);
  if (!a.out.empty()) {
    const std::filesystem::path dir(a.out);
    std::filesystem::create_directories(dir);
    {
      std::ofstream os(dir / "trace.csv", std::ios::binary);
      run.trace.write_csv(os);
    }
    j["inst_series_path"] = "trace.csv";
    std::ofstream(dir / "run.json", std::ios::binary) << j.dump(2) << "\n";
  }
  const auto& v = j["validation"];
  std::printf("algo=%s T=%lld seed=%llu cum_regret=%s final_x=%s terminated_by=%s monotone=%s\n",
              j["algo"].get<std::string>().c_str(), static_cast<long long>(a.T),
              static_cast<unsigned long long>(a.seed),
              mb::format_double(j["cum_regret"].get<double>()).c_str(),
              mb::format_double(run.final_x).c_str(),
              j["terminated_by"].get<std::string>().c_str(),
              v["monotone"].get<bool>() ? "true" : "false");
  return 0;
}

int do_sweep(const std::string& config_path, int workers, const std::string& out) {
  std::ifstream is(config_path);
  if (!is) throw std::runtime_error("cannot open " + config_path);
  const mb::SweepConfig config = mb::parse_sweep_config(nlohmann::json::parse(is));
  mb::SweepOptions options;
  options.workers = workers;
  if (!out.empty()) options.out_dir = std::filesystem::path(out);
  const mb::SweepReport report = mb::run_sweep(config, options);
  for (const auto& r : report.algos) {
    if (r.fit) {
      std::printf("%s slope=%.4f intercept=%.4f r2=%.4f points=%zu excluded=%zu\n",
                  r.algo.c_str(), r.fit->slope, r.fit->intercept, r.fit->r2, r.points.size(),
                  r.excluded.size());
    } else {
      std::printf("%s no fit (%s)\n", r.algo.c_str(), r.fit_error.c_str());
    }
  }
  std::printf("cells=%zu failures=%lld\n", report.cells.size(),
              static_cast<long long>(report.failures));
  for (const auto& c : report.cells) {
    if (!c.ok) {
      std::fprintf(stderr, "failed: %s T=%lld seed=%llu: %s\n", c.algo.c_str(),
                   static_cast<long long>(c.T), static_cast<unsigned long long>(c.seed),
                   c.error.c_str());
    }
  }
  return 0;
}

int do_verify() {
  int failed = 0;
  for (const auto& c : mb::run_property_suite()) {
    std::printf("%s %s%s%s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                c.detail.empty() ? "" : ": ", c.detail.c_str());
    if (!c.passed) ++failed;
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monotone stochastic convex minimization"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run one algorithm and write run.json and trace.csv");
  run_cmd->add_option("--algo", run.algo, "lgd|static|adaptive|hybrid|kw")->capture_default_str();
  run_cmd->add_option("--objective", run.objective, "quad:... or quartic:...")
      ->capture_default_str();
  run_cmd->add_option("--T", run.T, "Horizon (sample budget)")->required();
  run_cmd->add_option("--seed", run.seed, "Noise seed")->capture_default_str();
  run_cmd->add_option("--noise", run.noise, "none|uniform|rademacher")->capture_default_str();
  run_cmd->add_option("--noise-diameter", run.noise_diameter, "Noise support width")
      ->capture_default_str();
  run_cmd->add_option("--out", run.out, "Output directory");
  optional_flag(run_cmd, "--delta", run.config.delta, "Lag size");
  optional_flag(run_cmd, "--delta1", run.config.delta1, "Initial lag (adaptive)");
  optional_flag(run_cmd, "--gamma", run.config.gamma, "Stopping slack, > 1");
  optional_flag(run_cmd, "--q", run.config.q, "Lag shrink ratio (adaptive)");
  optional_flag(run_cmd, "--p", run.config.p, "Per-estimate failure probability");
  optional_flag(run_cmd, "--epsilon", run.config.epsilon, "Secant offset (static, hybrid)");
  optional_flag(run_cmd, "--n", run.config.n, "Samples per point (static, hybrid)");
  optional_flag(run_cmd, "--eta", run.config.eta, "Constant step (hybrid)");
  optional_flag(run_cmd, "--iota", run.config.iota, "Drop threshold (hybrid)");
  optional_flag(run_cmd, "--delta-floor", run.config.delta_floor, "Smallest lag (adaptive)");
  optional_flag(run_cmd, "--kw-a", run.config.kw_a, "Step constant (kw)");
  optional_flag(run_cmd, "--kw-c", run.config.kw_c, "Probe width constant (kw)");
  optional_flag(run_cmd, "--kw-x1", run.config.kw_x1, "Start point (kw)");
  run_cmd->add_option("--kappa", run.config.kappa, "Sample count multiplier in (0, 1]")
      ->capture_default_str();
  run_cmd->add_flag("--deterministic", run.config.deterministic, "One sample per point");
  run_cmd->add_flag("--lenient", run.config.lenient, "Clamp backward queries instead of failing");
  run_cmd->add_flag("!--no-observations", run.keep_observations,
                    "Leave the y column of trace.csv empty (saves memory)");

  std::string config_path, sweep_out;
  int workers = 1;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a horizon sweep from a JSON config");
  sweep_cmd->add_option("--config", config_path, "sweep.json")->required();
  sweep_cmd->add_option("--workers", workers, "Concurrent cells")->capture_default_str();
  sweep_cmd->add_option("--out", sweep_out, "Output directory");

  app.add_subcommand("verify", "Run the property suite; nonzero exit on failure");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run_cmd) return do_run(run);
    if (*sweep_cmd) return do_sweep(config_path, workers, sweep_out);
    return do_verify();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "monobandit: %s\n", e.what());
    return 1;
  }
}
