#include "monobandit/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace monobandit {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ResolvedConfig blank_config(Variant variant, std::int64_t T) {
  return {variant, T,    kNaN, kNaN, kNaN, kNaN, 0,   kNaN, kNaN,  kNaN,
          kNaN,    0.0,  kNaN, kNaN, kNaN, 1.0,  false, false};
}

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

/// Shared bookkeeping for one run against a caller-owned oracle.
class Session {
 public:
  Session(Oracle& oracle, RunResult& result) : oracle_(oracle), result_(result) {}

  bool fits(std::int64_t n) const { return oracle_.fits(n); }

  double mean_at(double x, std::int64_t n, Event event) {
    if (event != Event::sample) oracle_.mark(event);
    return oracle_.sample_mean(x, n);
  }

  double query(double x, Event event) {
    if (event != Event::sample) oracle_.mark(event);
    return oracle_.query(x);
  }

  void first_estimate_done() {
    if (result_.first_estimate_samples == 0) result_.first_estimate_samples = oracle_.used();
  }

  /// Spends the rest of the budget at x.
  void stabilize(double x, Termination why) {
    if (oracle_.remaining() > 0) {
      oracle_.mark(Event::stabilize);
      oracle_.sample_mean(x, oracle_.remaining());
    }
    result_.terminated_by = why;
  }

  RunResult finish() {
    result_.trace = oracle_.take_trace();
    if (!result_.trace.empty()) result_.final_x = result_.trace.back().x;
    if (result_.first_estimate_samples == 0) result_.first_estimate_samples = oracle_.budget();
    std::int64_t guards = 0;
    for (const auto& s : result_.trace.segments()) {
      if (s.event == Event::guard_clamp) ++guards;
    }
    result_.guard_events = guards;
    return std::move(result_);
  }

 private:
  Oracle& oracle_;
  RunResult& result_;
};

/// Next lagged pair after a jump, clamped to the domain and to the
/// high-water mark. Returns false when no pair with positive gap remains.
struct NextPair {
  double lagged;
  double x;
  bool clamped;
};

NextPair clamp_pair(double lagged, double x, double current, double p_max) {
  bool clamped = false;
  if (x > p_max) {
    x = p_max;
    clamped = true;
  }
  if (lagged < current) {
    lagged = current;
    clamped = true;
  }
  return {lagged, x, clamped};
}

/// Lagged descent with a fixed lag: Alg. 1 when n = 1 and offset = 0,
/// Alg. 2 otherwise. Returns the point where the jump test failed, or
/// nullopt if the run ended for another reason.
std::optional<double> fixed_lag_descent(Oracle& oracle, Session& session,
                                        RunResult& result, double delta, double gamma,
                                        std::int64_t n, double offset, bool jump_from_x) {
  const ObjectiveSpec& spec = oracle.spec();
  const double beta = spec.beta();
  oracle.annotate(1, delta);

  double lagged = spec.p_min();
  double x = lagged + delta;
  if (!session.fits(2 * n)) {
    session.stabilize(x, Termination::budget);
    return std::nullopt;
  }
  double m_lag = session.mean_at(lagged, n, Event::sample);
  double m_x = session.mean_at(x, n, Event::sample);
  session.first_estimate_done();

  for (;;) {
    SecantEstimate est = biased_secant(m_lag, m_x, lagged, x, offset);
    est.n_lo = n;
    est.n_hi = n;
    result.estimates.push_back({EstimateKind::jump_secant, est});

    const double step = -est.g / beta;
    if (!(step >= (1.0 + gamma) * delta)) return x;

    // Alg. 2 writes the jump from x_t with -2 delta; Alg. 1 from the lagged
    // point with -delta. Same point in exact arithmetic.
    const double next_lagged = jump_from_x ? x - est.g / beta - 2.0 * delta
                                           : lagged - est.g / beta - delta;
    const NextPair next = clamp_pair(next_lagged, next_lagged + delta, x, spec.p_max());
    if (!(next.lagged < next.x)) {
      session.stabilize(x, Termination::guard);
      return std::nullopt;
    }
    if (!session.fits(2 * n)) {
      session.stabilize(x, Termination::budget);
      return std::nullopt;
    }
    m_lag = session.mean_at(next.lagged, n, next.clamped ? Event::guard_clamp : Event::jump);
    m_x = session.mean_at(next.x, n, Event::sample);
    result.jumps.push_back({x, next.x, delta, 1, est, next.clamped});
    lagged = next.lagged;
    x = next.x;
  }
}

void check_lagged(const ObjectiveSpec& spec, double delta, double gamma, const char* who) {
  require(delta > 0.0, std::string(who) + ": delta must be positive");
  require(gamma > 1.0, std::string(who) + ": gamma must exceed 1");
  require(spec.p_min() + delta < spec.x_star(),
          std::string(who) + ": need p_min + delta < x_star");
}

std::int64_t checked_count(double epsilon, double p, const SamplingPolicy& policy,
                           const char* who) {
  const auto n = policy_samples(epsilon, p, policy);
  if (!n) throw PreconditionError(std::string(who) + ": sample count exceeds 2^62");
  return *n;
}

}  // namespace

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::lgd_noiseless: return "lgd_noiseless";
    case Variant::static_lgd: return "static_lgd";
    case Variant::adaptive_lgd: return "adaptive_lgd";
    case Variant::hybrid_lgd: return "hybrid_lgd";
    case Variant::kw_baseline: return "kw_baseline";
  }
  return "unknown";
}

Variant variant_from_string(std::string_view name) {
  if (name == "lgd" || name == "lgd_noiseless") return Variant::lgd_noiseless;
  if (name == "static" || name == "static_lgd") return Variant::static_lgd;
  if (name == "adaptive" || name == "adaptive_lgd") return Variant::adaptive_lgd;
  if (name == "hybrid" || name == "hybrid_lgd") return Variant::hybrid_lgd;
  if (name == "kw" || name == "kw_baseline") return Variant::kw_baseline;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::budget: return "budget";
    case Termination::stabilized: return "stabilized";
    case Termination::guard: return "guard";
  }
  return "budget";
}

ResolvedConfig resolve(const AlgoConfig& c, const ObjectiveSpec& spec) {
  require(c.T >= 1, "config: T must be positive");
  require(c.kappa > 0.0 && c.kappa <= 1.0, "config: kappa must lie in (0, 1]");
  const double T = static_cast<double>(c.T);
  const double log_t = std::log(T);
  auto horizon_default = [&](const std::optional<double>& v, double fallback, const char* name) {
    if (v) return *v;
    require(c.T >= 3, std::string("config: default ") + name + " needs T >= 3");
    return fallback;
  };

  ResolvedConfig r = blank_config(c.variant, c.T);
  r.kappa = c.kappa;
  r.deterministic = c.deterministic;
  r.lenient = c.lenient;
  const double alpha = spec.alpha();

  switch (c.variant) {
    case Variant::lgd_noiseless:
      r.delta = horizon_default(c.delta, std::pow(T, -0.5), "delta");
      r.gamma = horizon_default(c.gamma, 1.0 + 1.0 / log_t, "gamma");
      check_lagged(spec, r.delta, r.gamma, "lgd_noiseless");
      break;
    case Variant::static_lgd:
    case Variant::hybrid_lgd: {
      const bool hybrid = c.variant == Variant::hybrid_lgd;
      r.delta = horizon_default(c.delta, std::pow(T, hybrid ? -5.0 / 34.0 : -1.0 / 6.0), "delta");
      r.gamma = horizon_default(c.gamma, 1.0 + 1.0 / log_t, "gamma");
      r.p = horizon_default(c.p, 1.0 / (T * T), "p");
      r.epsilon = c.epsilon.value_or(bias_offset(alpha, r.delta));
      check_lagged(spec, r.delta, r.gamma, hybrid ? "hybrid_lgd" : "static_lgd");
      require(r.p > 0.0 && r.p < 1.0, "config: p must lie in (0, 1)");
      require(r.epsilon >= 0.0 &&
                  r.epsilon <= bias_offset(alpha, r.delta) * (1.0 + 1e-12),
              "config: epsilon must not exceed alpha delta^2 / 4");
      if (c.n) {
        r.n = *c.n;
      } else {
        require(r.epsilon > 0.0, "config: epsilon = 0 needs an explicit n");
        r.n = checked_count(r.epsilon, r.p, r.policy(), "config");
      }
      require(r.n >= 1, "config: n must be positive");
      if (hybrid) {
        r.eta = horizon_default(c.eta, std::pow(T, -7.0 / 34.0), "eta");
        r.iota = horizon_default(c.iota, std::pow(T, -7.0 / 17.0), "iota");
        require(r.eta > 0.0 && r.eta < r.delta, "hybrid_lgd: need 0 < eta < delta");
        require(r.iota > 0.0, "hybrid_lgd: iota must be positive");
      }
      break;
    }
    case Variant::adaptive_lgd:
      r.delta1 = horizon_default(c.delta1 ? c.delta1 : c.delta, 1.0 / log_t, "delta1");
      r.gamma = horizon_default(c.gamma, 1.0 + 1.0 / log_t, "gamma");
      r.p = horizon_default(c.p, 1.0 / (T * T), "p");
      r.q = c.q.value_or(0.5);
      r.delta_floor = c.delta_floor.value_or(0.0);
      check_lagged(spec, r.delta1, r.gamma, "adaptive_lgd");
      require(r.q > 0.0 && r.q < 1.0, "adaptive_lgd: q must lie in (0, 1)");
      require(r.p > 0.0 && r.p < 1.0, "adaptive_lgd: p must lie in (0, 1)");
      require(!c.delta_floor || *c.delta_floor > 0.0, "adaptive_lgd: delta_floor must be positive");
      break;
    case Variant::kw_baseline: {
      const double width = spec.p_max() - spec.p_min();
      r.kw_a = c.kw_a.value_or(1.0 / alpha);
      r.kw_c = c.kw_c.value_or(width / 10.0);
      r.kw_x1 = c.kw_x1.value_or(spec.p_min() + r.kw_c);
      require(r.kw_a > 0.0 && r.kw_c > 0.0, "kw_baseline: kw_a and kw_c must be positive");
      require(r.kw_x1 >= spec.p_min() && r.kw_x1 <= spec.p_max(),
              "kw_baseline: start point outside the domain");
      break;
    }
  }
  return r;
}

RunResult run_lgd_noiseless(Oracle& oracle, const LgdParams& prm) {
  require(oracle.noise().kind == NoiseKind::none, "lgd_noiseless: requires noise = none");
  check_lagged(oracle.spec(), prm.delta, prm.gamma, "lgd_noiseless");
  RunResult result;
  result.config = blank_config(Variant::lgd_noiseless, oracle.budget());
  result.config.delta = prm.delta;
  result.config.gamma = prm.gamma;
  result.config.deterministic = true;
  Session session(oracle, result);
  if (auto stop = fixed_lag_descent(oracle, session, result, prm.delta, prm.gamma, 1, 0.0,
                                    /*jump_from_x=*/false)) {
    session.stabilize(*stop, Termination::stabilized);
  }
  return session.finish();
}

RunResult run_static_lgd(Oracle& oracle, const StaticLgdParams& prm) {
  const ObjectiveSpec& spec = oracle.spec();
  check_lagged(spec, prm.delta, prm.gamma, "static_lgd");
  require(prm.n >= 1, "static_lgd: n must be positive");
  require(prm.epsilon >= 0.0 &&
              prm.epsilon <= bias_offset(spec.alpha(), prm.delta) * (1.0 + 1e-12),
          "static_lgd: epsilon must not exceed alpha delta^2 / 4");
  RunResult result;
  result.config = blank_config(Variant::static_lgd, oracle.budget());
  result.config.delta = prm.delta;
  result.config.gamma = prm.gamma;
  result.config.epsilon = prm.epsilon;
  result.config.n = prm.n;
  Session session(oracle, result);
  if (auto stop = fixed_lag_descent(oracle, session, result, prm.delta, prm.gamma, prm.n,
                                    prm.epsilon, /*jump_from_x=*/true)) {
    session.stabilize(*stop, Termination::stabilized);
  }
  return session.finish();
}

RunResult run_adaptive_lgd(Oracle& oracle, const AdaptiveLgdParams& prm) {
  const ObjectiveSpec& spec = oracle.spec();
  check_lagged(spec, prm.delta1, prm.gamma, "adaptive_lgd");
  require(prm.q > 0.0 && prm.q < 1.0, "adaptive_lgd: q must lie in (0, 1)");
  require(prm.p > 0.0 && prm.p < 1.0, "adaptive_lgd: p must lie in (0, 1)");

  RunResult result;
  result.config = blank_config(Variant::adaptive_lgd, oracle.budget());
  result.config.delta1 = prm.delta1;
  result.config.gamma = prm.gamma;
  result.config.q = prm.q;
  result.config.p = prm.p;
  result.config.delta_floor = prm.delta_floor;
  result.config.kappa = prm.policy.kappa;
  result.config.deterministic = prm.policy.deterministic;
  Session session(oracle, result);

  const double alpha = spec.alpha();
  const double beta = spec.beta();
  const double xi = 1.0 - prm.q;
  auto lag = [&](int i) { return prm.delta1 * std::pow(prm.q, i - 1); };
  auto count = [&](double gap) { return policy_samples(bias_offset(alpha, gap), prm.p, prm.policy); };

  double x = spec.p_min() + prm.delta1;
  int i = 1;
  int phase_lag = 0;
  Event pending = Event::sample;

  for (;;) {
    // Find the first lag, starting from the incumbent, whose probe secant
    // is steep enough: -g / beta >= (2 + gamma) delta_i.
    SecantEstimate probe{};
    for (;;) {
      const double d = lag(i);
      const auto n = count(xi * d);
      if (d < prm.delta_floor || !n || !session.fits(2 * *n)) {
        session.stabilize(x, Termination::budget);
        return session.finish();
      }
      const double lo = std::max(x - d, oracle.high_water());
      const double hi = x - lag(i + 1);
      if (!(lo < hi && hi < x)) {
        // Lag below floating-point resolution at x.
        session.stabilize(x, Termination::budget);
        return session.finish();
      }
      oracle.annotate(i, d);
      const double m_lo = session.mean_at(lo, *n, pending);
      const double m_hi = session.mean_at(hi, *n, Event::sample);
      pending = Event::sample;
      probe = conservative_secant(m_lo, m_hi, lo, hi, alpha);
      probe.n_lo = *n;
      probe.n_hi = *n;
      result.estimates.push_back({EstimateKind::lag_probe, probe});
      session.first_estimate_done();
      if (-probe.g / beta >= (2.0 + prm.gamma) * d) break;
      ++i;
      pending = Event::lag_shrink;
    }

    const double d = lag(i);
    const auto n_x = count(d);
    if (!n_x || !session.fits(*n_x)) {
      session.stabilize(x, Termination::budget);
      return session.finish();
    }
    const double m_x = session.mean_at(x, *n_x, Event::sample);
    SecantEstimate secant = conservative_secant(probe.mean_lo, m_x, probe.x_lo, x, alpha);
    secant.n_lo = probe.n_lo;
    secant.n_hi = *n_x;
    result.estimates.push_back({EstimateKind::jump_secant, secant});

    if (i != phase_lag) {
      result.phases.push_back({static_cast<int>(result.phases.size()) + 1, i, d, x});
      phase_lag = i;
    }

    double next = x - secant.g / beta - d;
    bool clamped = false;
    // The next lagged point x_{t+1} - delta_i must not fall below x_t.
    if (next - d < x) {
      next = x + d;
      clamped = true;
    }
    if (next > spec.p_max()) {
      next = spec.p_max();
      clamped = true;
      if (next - d < x) {
        session.stabilize(x, Termination::guard);
        return session.finish();
      }
    }
    result.jumps.push_back({x, next, d, i, secant, clamped});
    pending = clamped ? Event::guard_clamp : Event::jump;
    x = next;
  }
}

ConstantStepOutcome constant_step_stage(Oracle& oracle, double start, double eta,
                                        double iota, std::int64_t samples) {
  require(eta > 0.0 && iota > 0.0, "constant steps: eta and iota must be positive");
  require(samples >= 1, "constant steps: sample count must be positive");
  ConstantStepOutcome out{start, {}, Termination::budget};
  RunResult scratch;
  Session session(oracle, scratch);
  oracle.annotate(2, 0.0);
  double x = start;
  Event pending = Event::sample;
  for (;;) {
    const double next = x + eta;
    if (next > oracle.spec().p_max()) {
      session.stabilize(x, Termination::guard);
      out.terminated_by = Termination::guard;
      out.final_x = x;
      return out;
    }
    if (!session.fits(2 * samples)) {
      session.stabilize(x, Termination::budget);
      out.terminated_by = Termination::budget;
      out.final_x = x;
      return out;
    }
    const double here = session.mean_at(x, samples, pending);
    const double there = session.mean_at(next, samples, Event::sample);
    const bool advance = here - iota / 2.0 > there + iota / 2.0;
    out.steps.push_back({x, next, here, there, advance});
    // Either way the last point sampled is next; staying there keeps the
    // query sequence monotone.
    x = next;
    if (!advance) {
      session.stabilize(x, Termination::stabilized);
      out.terminated_by = Termination::stabilized;
      out.final_x = x;
      return out;
    }
    pending = Event::jump;
  }
}

RunResult run_hybrid_lgd(Oracle& oracle, const HybridLgdParams& prm) {
  const ObjectiveSpec& spec = oracle.spec();
  check_lagged(spec, prm.delta, prm.gamma, "hybrid_lgd");
  require(prm.eta > 0.0 && prm.eta < prm.delta, "hybrid_lgd: need 0 < eta < delta");
  require(prm.iota > 0.0, "hybrid_lgd: iota must be positive");
  require(prm.p > 0.0 && prm.p < 1.0, "hybrid_lgd: p must lie in (0, 1)");

  const double epsilon = prm.epsilon.value_or(bias_offset(spec.alpha(), prm.delta));
  require(epsilon >= 0.0 && epsilon <= bias_offset(spec.alpha(), prm.delta) * (1.0 + 1e-12),
          "hybrid_lgd: epsilon must not exceed alpha delta^2 / 4");
  const std::int64_t n = prm.n ? *prm.n : checked_count(epsilon, prm.p, prm.policy, "hybrid_lgd");
  const std::int64_t m = checked_count(prm.iota, prm.p, prm.policy, "hybrid_lgd");

  RunResult result;
  result.config = blank_config(Variant::hybrid_lgd, oracle.budget());
  result.config.delta = prm.delta;
  result.config.eta = prm.eta;
  result.config.iota = prm.iota;
  result.config.gamma = prm.gamma;
  result.config.p = prm.p;
  result.config.epsilon = epsilon;
  result.config.n = n;
  result.config.kappa = prm.policy.kappa;
  result.config.deterministic = prm.policy.deterministic;
  Session session(oracle, result);

  auto stop = fixed_lag_descent(oracle, session, result, prm.delta, prm.gamma, n, epsilon,
                                /*jump_from_x=*/true);
  if (stop) {
    ConstantStepOutcome stage = constant_step_stage(oracle, *stop, prm.eta, prm.iota, m);
    result.steps = std::move(stage.steps);
    result.terminated_by = stage.terminated_by;
  }
  return session.finish();
}

RunResult run_kw_baseline(Oracle& oracle, const KwParams& prm) {
  const ObjectiveSpec& spec = oracle.spec();
  require(prm.kw_a > 0.0 && prm.kw_c > 0.0, "kw_baseline: kw_a and kw_c must be positive");
  require(prm.x1 >= spec.p_min() && prm.x1 <= spec.p_max(),
          "kw_baseline: start point outside the domain");
  RunResult result;
  result.config = blank_config(Variant::kw_baseline, oracle.budget());
  result.config.kw_a = prm.kw_a;
  result.config.kw_c = prm.kw_c;
  result.config.kw_x1 = prm.x1;
  Session session(oracle, result);

  auto clamp = [&](double v) { return std::clamp(v, spec.p_min(), spec.p_max()); };
  double x = prm.x1;
  for (std::int64_t k = 1;; ++k) {
    if (!session.fits(2)) {
      session.stabilize(x, Termination::budget);
      break;
    }
    const double c = prm.kw_c * std::pow(static_cast<double>(k), -0.25);
    const double lo = clamp(x - c);
    const double hi = clamp(x + c);
    const double y_lo = session.query(lo, Event::sample);
    const double y_hi = session.query(hi, Event::sample);
    session.first_estimate_done();
    const double g = (y_hi - y_lo) / (hi - lo);
    x = clamp(x - prm.kw_a / static_cast<double>(k) * g);
  }
  return session.finish();
}

RunResult run_lgd_noiseless(const ObjectiveSpec& spec, const LgdParams& params) {
  Oracle oracle(spec, NoiseModel::none(), params.T);
  return run_lgd_noiseless(oracle, params);
}

RunResult run_static_lgd(const ObjectiveSpec& spec, const NoiseModel& noise,
                         const StaticLgdParams& params) {
  Oracle oracle(spec, noise, params.T);
  RunResult r = run_static_lgd(oracle, params);
  r.seed = noise.seed;
  return r;
}

RunResult run_adaptive_lgd(const ObjectiveSpec& spec, const NoiseModel& noise,
                           const AdaptiveLgdParams& params) {
  Oracle oracle(spec, noise, params.T);
  RunResult r = run_adaptive_lgd(oracle, params);
  r.seed = noise.seed;
  return r;
}

RunResult run_hybrid_lgd(const ObjectiveSpec& spec, const NoiseModel& noise,
                         const HybridLgdParams& params) {
  Oracle oracle(spec, noise, params.T);
  RunResult r = run_hybrid_lgd(oracle, params);
  r.seed = noise.seed;
  return r;
}

RunResult run_kw_baseline(const ObjectiveSpec& spec, const NoiseModel& noise,
                          const KwParams& params) {
  Oracle oracle(spec, noise, params.T, MonotonicityMode::off);
  RunResult r = run_kw_baseline(oracle, params);
  r.seed = noise.seed;
  return r;
}

RunResult run_algorithm(const ObjectiveSpec& spec, const NoiseModel& noise,
                        const AlgoConfig& config, bool retain_observations) {
  const ResolvedConfig rc = resolve(config, spec);
  MonotonicityMode mode = rc.lenient ? MonotonicityMode::lenient : MonotonicityMode::strict;
  if (rc.variant == Variant::kw_baseline) mode = MonotonicityMode::off;
  Oracle oracle(spec, noise, rc.T, mode, retain_observations);

  RunResult result;
  switch (rc.variant) {
    case Variant::lgd_noiseless:
      result = run_lgd_noiseless(oracle, LgdParams{rc.T, rc.delta, rc.gamma});
      break;
    case Variant::static_lgd:
      result = run_static_lgd(oracle, StaticLgdParams{rc.T, rc.n, rc.epsilon, rc.delta, rc.gamma});
      break;
    case Variant::adaptive_lgd:
      result = run_adaptive_lgd(oracle, AdaptiveLgdParams{rc.T, rc.delta1, rc.gamma, rc.q, rc.p,
                                                          rc.policy(), rc.delta_floor});
      break;
    case Variant::hybrid_lgd:
      result = run_hybrid_lgd(oracle, HybridLgdParams{rc.T, rc.delta, rc.eta, rc.iota, rc.gamma,
                                                      rc.p, rc.policy(), rc.epsilon, rc.n});
      break;
    case Variant::kw_baseline:
      result = run_kw_baseline(oracle, KwParams{rc.T, rc.kw_a, rc.kw_c, rc.kw_x1});
      break;
  }
  result.config = rc;
  result.seed = noise.seed;
  return result;
}

}  // namespace monobandit
