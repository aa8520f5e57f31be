#include "monobandit/verify.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "monobandit/algorithms.hpp"
#include "monobandit/estimator.hpp"
#include "monobandit/objective.hpp"
#include "monobandit/regret.hpp"
#include "monobandit/sweep.hpp"

namespace monobandit {
namespace {

struct Suite {
  std::vector<CheckResult> results;

  void check(const std::string& name, const std::function<std::string()>& body) {
    try {
      const std::string failure = body();
      results.push_back({name, failure.empty(), failure});
    } catch (const std::exception& e) {
      results.push_back({name, false, std::string("threw: ") + e.what()});
    }
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

bool close(double a, double b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

std::vector<double> distinct_points(const Trace& trace) {
  std::vector<double> xs;
  for (const auto& s : trace.segments()) {
    if (xs.empty() || xs.back() != s.x) xs.push_back(s.x);
  }
  return xs;
}

std::string grid_inequalities(const ObjectiveSpec& spec, int n) {
  const double h = (spec.p_max() - spec.p_min()) / (n - 1);
  for (int i = 0; i < n; ++i) {
    const double x = spec.p_min() + i * h;
    const double gx = spec.grad(x);
    if (gx * gx < 2.0 * spec.alpha() * spec.inst_regret(x) - 1e-9) {
      return "gradient-gap inequality fails at " + fmt(x);
    }
    for (int k = i + 1; k < n; ++k) {
      const double y = spec.p_min() + k * h;
      if (std::abs(spec.grad(y) - gx) < spec.alpha() * (y - x) - 1e-9) {
        return "anti-Lipschitz bound fails at (" + fmt(x) + ", " + fmt(y) + ")";
      }
    }
  }
  return {};
}

}  // namespace

std::vector<CheckResult> run_property_suite() {
  Suite s;
  const ObjectiveSpec quad = make_quadratic(1.0, 1.0, 0.0, 2.0);
  const ObjectiveSpec quartic = make_quartic_blend(1.0, 5.0, 1.0 / 6.0, 0.0, 2.0);

  s.check("noiseless hand trace", [&]() -> std::string {
    const RunResult r = run_lgd_noiseless(quad, LgdParams{10, 0.1, 2.0});
    const std::vector<double> want = {0.0, 0.1, 0.85, 0.95};
    const auto got = distinct_points(r.trace);
    if (got.size() != want.size()) return "visited " + std::to_string(got.size()) + " points";
    for (std::size_t k = 0; k < want.size(); ++k) {
      if (!close(got[k], want[k])) return "point " + std::to_string(k) + " = " + fmt(got[k]);
    }
    const double expect = 1.0 + 0.81 + 0.0225 + 0.0025 * 7;
    const double cum = cumulative_regret(r.trace, quad).cum_regret;
    if (!close(cum, expect, 1e-12)) return "cum_regret " + fmt(cum);
    const ValidationSummary v = validate_run(r, quad);
    if (!v.monotone || v.overshoot_count != 0 || !v.contractions_ok) return "validation failed";
    return {};
  });

  s.check("adaptive deterministic hand trace", [&]() -> std::string {
    AdaptiveLgdParams p{400, 0.2, 2.0, 0.5, 0.5, SamplingPolicy{1.0, true}, 0.0};
    const RunResult r = run_adaptive_lgd(quad, NoiseModel::none(), p);
    if (r.jumps.size() < 2) return "fewer than two jumps";
    if (!close(r.jumps[0].to_x, 0.85)) return "x2 = " + fmt(r.jumps[0].to_x);
    if (!close(r.jumps[1].to_x, 0.98125)) return "x3 = " + fmt(r.jumps[1].to_x);
    if (r.jumps[1].lag_index != 4) return "second jump at lag index " + std::to_string(r.jumps[1].lag_index);
    return {};
  });

  s.check("regret of a short trace", [&]() -> std::string {
    Trace t;
    for (double x : {0.0, 0.1, 0.1}) t.append(x, 0.0, quad.inst_regret(x), 0, 0.0, Event::sample);
    const double cum = cumulative_regret(t, quad).cum_regret;
    return close(cum, 2.62, 1e-12) ? "" : "got " + fmt(cum);
  });

  s.check("regret additivity", [&]() -> std::string {
    AlgoConfig c;
    c.variant = Variant::static_lgd;
    c.T = 20000;
    c.kappa = 0.01;
    const RunResult a = run_algorithm(quad, NoiseModel::uniform(1), c);
    const RunResult b = run_algorithm(quad, NoiseModel::uniform(2), c);
    const double sum = cumulative_regret(a.trace, quad).cum_regret +
                       cumulative_regret(b.trace, quad).cum_regret;
    const double joint = cumulative_regret(Trace::concat(a.trace, b.trace), quad).cum_regret;
    return std::abs(sum - joint) <= 1e-12 * std::abs(sum) ? "" : fmt(sum) + " vs " + fmt(joint);
  });

  s.check("determinism", [&]() -> std::string {
    AlgoConfig c;
    c.variant = Variant::adaptive_lgd;
    c.T = 50000;
    c.kappa = 0.01;
    std::ostringstream a, b;
    run_algorithm(quad, NoiseModel::uniform(7), c).trace.write_csv(a);
    run_algorithm(quad, NoiseModel::uniform(7), c).trace.write_csv(b);
    return a.str() == b.str() ? "" : "traces differ";
  });

  s.check("strict monotonicity under noise", [&]() -> std::string {
    for (Variant v : {Variant::static_lgd, Variant::adaptive_lgd, Variant::hybrid_lgd}) {
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        AlgoConfig c;
        c.variant = v;
        c.T = 100000;
        c.kappa = 0.01;
        const RunResult r = run_algorithm(quartic, NoiseModel::uniform(seed), c, false);
        if (!validate_trace(r.trace, quartic).monotone) {
          return std::string(to_string(v)) + " seed " + std::to_string(seed);
        }
      }
    }
    return {};
  });

  s.check("kw baseline is not monotone", [&]() -> std::string {
    AlgoConfig c;
    c.variant = Variant::kw_baseline;
    c.T = 2000;
    const RunResult r = run_algorithm(quad, NoiseModel::uniform(3), c);
    const ValidationSummary v = validate_trace(r.trace, quad);
    return !v.monotone && v.monotonicity_violations > 0 ? "" : "no violations recorded";
  });

  s.check("noiseless sandwich", [&]() -> std::string {
    for (const ObjectiveSpec* spec : {&quad, &quartic}) {
      const double h = (spec->p_max() - spec->p_min()) / 49.0;
      for (int i = 0; i < 50; ++i) {
        for (int k = i + 1; k < 50; ++k) {
          const double lo = spec->p_min() + i * h, hi = spec->p_min() + k * h;
          const SecantEstimate e =
              conservative_secant(spec->eval(lo), spec->eval(hi), lo, hi, spec->alpha());
          const double secant = (spec->eval(hi) - spec->eval(lo)) / (hi - lo);
          const double tol = 1e-9;
          if (spec->grad(lo) > secant + tol || secant > e.g + tol || e.g > spec->grad(hi) + tol) {
            return spec->label() + " at (" + fmt(lo) + ", " + fmt(hi) + ")";
          }
        }
      }
    }
    return {};
  });

  s.check("strong convexity inequalities", [&]() -> std::string {
    for (const ObjectiveSpec* spec : {&quad, &quartic}) {
      if (auto err = grid_inequalities(*spec, 1001); !err.empty()) return spec->label() + ": " + err;
    }
    return {};
  });

  s.check("sample counts", [&]() -> std::string {
    if (required_samples(1.0, 1.0, 2.0 / std::exp(1.0)) != 32) return "lemma count";
    if (required_samples(2.0, 0.5, 0.01) != 679) return "count at gap 0.5";
    if (required_samples(2.0, 0.4, 0.01) != 1656) return "count at gap 0.4";
    return {};
  });

  s.check("slope fit", [&]() -> std::string {
    const std::vector<std::pair<double, double>> sqrt_pts = {{100, 10}, {1e4, 100}, {1e6, 1000}};
    if (!close(fit_regret_slope(sqrt_pts).slope, 0.5, 1e-12)) return "sqrt series";
    std::vector<std::pair<double, double>> pts;
    for (double T : {1e3, 1e4, 1e5}) pts.emplace_back(T, 2.0 * std::pow(T, 2.0 / 3.0));
    if (!close(fit_regret_slope(pts).slope, 2.0 / 3.0, 1e-9)) return "two-thirds series";
    const std::vector<std::pair<double, double>> flat = {{1e3, 7}, {1e4, 7}, {1e5, 7}};
    if (!close(fit_regret_slope(flat).slope, 0.0, 1e-12)) return "constant series";
    return {};
  });

  s.check("empty sweep", [&]() -> std::string {
    SweepConfig c;
    c.objective = "quad:center=1,curv=1,lo=0,hi=2";
    c.horizons = {1000};
    const SweepReport r = run_sweep(c);
    return r.cells.empty() && r.failures == 0 ? "" : "unexpected cells";
  });

  return s.results;
}

}  // namespace monobandit
