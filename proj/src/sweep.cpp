#include "monobandit/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "monobandit/serialize.hpp"

namespace monobandit {
namespace {

using nlohmann::json;

std::string objective_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (!j.is_object() || !j.contains("kind")) {
    throw std::invalid_argument("sweep config: objective needs a string or {\"kind\": ...}");
  }
  std::ostringstream os;
  os.precision(17);
  os << j.at("kind").get<std::string>() << ':';
  bool first = true;
  for (const auto& [key, value] : j.items()) {
    if (key == "kind") continue;
    if (!value.is_number()) {
      throw std::invalid_argument("sweep config: objective field '" + key + "' must be a number");
    }
    os << (first ? "" : ",") << key << '=' << value.get<double>();
    first = false;
  }
  return os.str();
}

NoiseModel parse_noise(const json& j) {
  NoiseModel m = NoiseModel::uniform(0);
  if (j.is_string()) {
    m.kind = noise_kind_from_string(j.get<std::string>());
  } else if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (key == "kind") {
        m.kind = noise_kind_from_string(value.get<std::string>());
      } else if (key == "diameter") {
        m.diameter = value.get<double>();
      } else if (key == "seed") {
        m.seed = value.get<std::uint64_t>();
      } else {
        throw std::invalid_argument("sweep config: unknown noise field '" + key + "'");
      }
    }
  } else {
    throw std::invalid_argument("sweep config: noise must be a string or object");
  }
  if (m.kind == NoiseKind::custom_bounded) {
    throw std::invalid_argument("sweep config: custom noise cannot be set from JSON");
  }
  if (m.kind == NoiseKind::none) m.diameter = 0.0;
  m.validate();
  return m;
}

struct Cell {
  std::size_t algo;
  std::int64_t T;
  int replicate;
};

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
}

}  // namespace

SweepAlgo parse_algo(const json& j, double kappa) {
  SweepAlgo a;
  a.config.kappa = kappa;
  if (j.is_string()) {
    a.config.variant = variant_from_string(j.get<std::string>());
    a.label = std::string(to_string(a.config.variant));
    return a;
  }
  if (!j.contains("variant")) throw std::invalid_argument("sweep config: algo needs a variant");
  a.config.variant = variant_from_string(j.at("variant").get<std::string>());
  a.label = std::string(to_string(a.config.variant));
  const std::map<std::string, std::optional<double> AlgoConfig::*> reals = {
      {"delta", &AlgoConfig::delta},   {"delta1", &AlgoConfig::delta1},
      {"gamma", &AlgoConfig::gamma},   {"epsilon", &AlgoConfig::epsilon},
      {"q", &AlgoConfig::q},           {"p", &AlgoConfig::p},
      {"eta", &AlgoConfig::eta},       {"iota", &AlgoConfig::iota},
      {"delta_floor", &AlgoConfig::delta_floor},
      {"kw_a", &AlgoConfig::kw_a},     {"kw_c", &AlgoConfig::kw_c},
      {"kw_x1", &AlgoConfig::kw_x1}};
  for (const auto& [key, value] : j.items()) {
    if (key == "variant") continue;
    if (key == "label") {
      a.label = value.get<std::string>();
    } else if (key == "n") {
      a.config.n = value.get<std::int64_t>();
    } else if (key == "kappa") {
      a.config.kappa = value.get<double>();
    } else if (key == "deterministic") {
      a.config.deterministic = value.get<bool>();
    } else if (key == "lenient") {
      a.config.lenient = value.get<bool>();
    } else if (auto it = reals.find(key); it != reals.end()) {
      a.config.*(it->second) = value.get<double>();
    } else {
      throw std::invalid_argument("sweep config: unknown algo field '" + key + "'");
    }
  }
  if (a.label.empty() || a.label.find('/') != std::string::npos) {
    throw std::invalid_argument("sweep config: algo label must be a plain directory name");
  }
  return a;
}

SweepConfig parse_sweep_config(const json& j) {
  SweepConfig c;
  for (const auto& [key, value] : j.items()) {
    static const std::set<std::string> known = {"name",    "objective",  "noise",
                                                "algos",   "horizons",   "replicates",
                                                "kappa",   "write_traces"};
    if (!known.count(key)) throw std::invalid_argument("sweep config: unknown field '" + key + "'");
  }
  c.name = j.value("name", std::string("sweep"));
  if (c.name.empty() || c.name.find('/') != std::string::npos) {
    throw std::invalid_argument("sweep config: name must be a plain directory name");
  }
  if (!j.contains("objective")) throw std::invalid_argument("sweep config: missing objective");
  c.objective = objective_text(j.at("objective"));
  c.noise = j.contains("noise") ? parse_noise(j.at("noise")) : NoiseModel::uniform(0);
  c.kappa = j.value("kappa", 1.0);
  c.replicates = j.value("replicates", 1);
  c.write_traces = j.value("write_traces", true);
  if (c.replicates < 1) throw std::invalid_argument("sweep config: replicates must be >= 1");
  for (const auto& h : j.value("horizons", json::array())) {
    const auto T = h.get<std::int64_t>();
    if (T < 1) throw std::invalid_argument("sweep config: horizons must be positive");
    c.horizons.push_back(T);
  }
  std::sort(c.horizons.begin(), c.horizons.end());
  c.horizons.erase(std::unique(c.horizons.begin(), c.horizons.end()), c.horizons.end());
  std::set<std::string> labels;
  for (const auto& a : j.value("algos", json::array())) {
    c.algos.push_back(parse_algo(a, c.kappa));
    if (!labels.insert(c.algos.back().label).second) {
      throw std::invalid_argument("sweep config: duplicate algo label '" + c.algos.back().label +
                                  "'");
    }
  }
  return c;
}

std::pair<double, double> mean_std(std::span<const double> values) {
  if (values.empty()) return {0.0, 0.0};
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  if (values.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / static_cast<double>(values.size() - 1))};
}

SweepReport run_sweep(const SweepConfig& config, const SweepOptions& options) {
  const ObjectiveSpec spec = parse_objective(config.objective);

  std::vector<Cell> cells;
  for (std::size_t a = 0; a < config.algos.size(); ++a) {
    for (std::int64_t T : config.horizons) {
      for (int r = 0; r < config.replicates; ++r) cells.push_back({a, T, r});
    }
  }

  std::optional<std::filesystem::path> root;
  if (options.out_dir) {
    root = *options.out_dir / config.name;
    std::filesystem::create_directories(*root);
  }

  std::vector<CellResult> results(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < cells.size(); k = next++) {
      const Cell& cell = cells[k];
      const SweepAlgo& algo = config.algos[cell.algo];
      CellResult& out = results[k];
      out.algo = algo.label;
      out.T = cell.T;
      out.replicate = cell.replicate;
      out.seed = config.noise.seed + static_cast<std::uint64_t>(cell.replicate);
      try {
        AlgoConfig ac = algo.config;
        ac.T = cell.T;
        const NoiseModel noise = config.noise.with_seed(out.seed);
        const RunResult run = run_algorithm(spec, noise, ac, config.write_traces && root);
        const RegretReport report = regret_report(run, spec);
        out.cum_regret = report.cum_regret;
        out.first_estimate_share =
            static_cast<double>(run.first_estimate_samples) / static_cast<double>(cell.T);
        out.guard_events = run.guard_events;
        out.config_digest = report.config_digest;
        if (root) {
          const auto dir = *root / algo.label / std::to_string(cell.T) / std::to_string(out.seed);
          std::filesystem::create_directories(dir);
          json rj = to_json(run, spec, noise);
          if (config.write_traces) {
            rj["inst_series_path"] = "trace.csv";
            std::ofstream os(dir / "trace.csv", std::ios::binary);
            run.trace.write_csv(os);
          }
          write_text(dir / "run.json", rj.dump(2) + "\n");
        }
        out.ok = true;
      } catch (const std::exception& e) {
        out.ok = false;
        out.error = e.what();
      }
    }
  };
  const int workers = std::max(1, std::min<int>(options.workers, static_cast<int>(cells.size())));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SweepReport report;
  report.name = config.name;
  report.kappa = config.kappa;
  for (const auto& c : results) {
    if (!c.ok) ++report.failures;
  }
  for (std::size_t a = 0; a < config.algos.size(); ++a) {
    SweepResult sr;
    sr.algo = config.algos[a].label;
    std::vector<std::pair<double, double>> fit_points;
    for (std::int64_t T : config.horizons) {
      std::vector<double> regrets;
      double max_share = 0.0;
      for (std::size_t k = 0; k < cells.size(); ++k) {
        if (cells[k].algo != a || cells[k].T != T || !results[k].ok) continue;
        regrets.push_back(results[k].cum_regret);
        max_share = std::max(max_share, results[k].first_estimate_share);
      }
      if (regrets.empty()) continue;
      const auto [mean, sd] = mean_std(regrets);
      sr.points.push_back({T, mean, sd, static_cast<int>(regrets.size())});
      if (max_share > kPreAsymptoticShare) {
        sr.excluded.push_back(T);
      } else {
        fit_points.emplace_back(static_cast<double>(T), mean);
      }
    }
    try {
      sr.fit = fit_regret_slope(fit_points);
    } catch (const std::exception& e) {
      sr.fit_error = e.what();
    }
    report.algos.push_back(std::move(sr));
  }
  report.cells = std::move(results);

  if (root) {
    std::ostringstream sweep_csv;
    sweep_csv << "algo,T,mean,std,count,excluded\n";
    json top;
    top["version"] = kSchemaVersion;
    top["name"] = config.name;
    top["objective"] = config.objective;
    top["noise"] = to_json(config.noise);
    top["kappa"] = config.kappa;
    top["cell_count"] = report.cells.size();
    top["failures"] = report.failures;
    top["algos"] = json::object();
    for (const auto& sr : report.algos) {
      const std::set<std::int64_t> excluded(sr.excluded.begin(), sr.excluded.end());
      for (const auto& p : sr.points) {
        sweep_csv << sr.algo << ',' << p.T << ',' << format_double(p.mean) << ','
                  << format_double(p.std) << ',' << p.count << ','
                  << (excluded.count(p.T) ? 1 : 0) << '\n';
      }
      json s = to_json(sr, config.kappa);
      std::set<std::string> digests;
      for (const auto& c : report.cells) {
        if (c.algo == sr.algo && c.ok) digests.insert(c.config_digest);
      }
      s["config_digests"] = digests;
      std::filesystem::create_directories(*root / sr.algo);
      write_text(*root / sr.algo / "summary.json", s.dump(2) + "\n");
      top["algos"][sr.algo] = s;
    }
    if (report.algos.size() == 1) {
      for (const char* key : {"slope", "intercept", "r2", "points", "excluded"}) {
        top[key] = top["algos"][report.algos[0].algo][key];
      }
    }
    write_text(*root / "sweep.csv", sweep_csv.str());

    std::ostringstream cells_csv;
    cells_csv << "algo,T,replicate,seed,ok,cum_regret,first_estimate_share,guard_events,"
                 "config_digest,error\n";
    for (const auto& c : report.cells) {
      std::string err = c.error;
      std::replace(err.begin(), err.end(), ',', ';');
      std::replace(err.begin(), err.end(), '\n', ' ');
      cells_csv << c.algo << ',' << c.T << ',' << c.replicate << ',' << c.seed << ','
                << (c.ok ? 1 : 0) << ',' << format_double(c.cum_regret) << ','
                << format_double(c.first_estimate_share) << ',' << c.guard_events << ','
                << c.config_digest << ',' << err << '\n';
    }
    write_text(*root / "cells.csv", cells_csv.str());
    write_text(*root / "summary.json", top.dump(2) + "\n");
  }
  return report;
}

}  // namespace monobandit
