#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "monobandit/algorithms.hpp"
#include "monobandit/estimator.hpp"
#include "monobandit/objective.hpp"
#include "monobandit/regret.hpp"
#include "monobandit/serialize.hpp"
#include "monobandit/sweep.hpp"
#include "monobandit/verify.hpp"

namespace py = pybind11;
namespace mb = monobandit;
using nlohmann::json;

namespace {

mb::NoiseModel make_noise(const std::string& kind, double diameter, std::uint64_t seed) {
  if (mb::noise_kind_from_string(kind) == mb::NoiseKind::none) {
    return mb::NoiseModel::none().with_seed(seed);
  }
  mb::NoiseModel m = mb::NoiseModel::uniform(seed, diameter);
  m.kind = mb::noise_kind_from_string(kind);
  m.validate();
  return m;
}

// Returns (run JSON text, trace CSV text). The CSV is empty unless asked for.
std::pair<std::string, std::string> run(const std::string& algo, const std::string& objective,
                                        std::int64_t T, std::uint64_t seed,
                                        const std::string& noise, double diameter,
                                        const std::string& overrides, bool with_trace) {
  const mb::ObjectiveSpec spec = mb::parse_objective(objective);
  json entry = overrides.empty() ? json::object() : json::parse(overrides);
  entry["variant"] = algo;
  const double kappa = entry.value("kappa", 1.0);
  mb::AlgoConfig config = mb::parse_algo(entry, kappa).config;
  config.T = T;
  const mb::NoiseModel model = make_noise(noise, diameter, seed);

  mb::RunResult result;
  {
    py::gil_scoped_release release;
    result = mb::run_algorithm(spec, model, config, with_trace);
  }
  std::string csv;
  if (with_trace) {
    std::ostringstream os;
    result.trace.write_csv(os);
    csv = os.str();
  }
  return {mb::to_json(result, spec, model).dump(), csv};
}

std::string sweep(const std::string& config_text, int workers, const std::string& out_dir) {
  const mb::SweepConfig config = mb::parse_sweep_config(json::parse(config_text));
  mb::SweepOptions options;
  options.workers = workers;
  if (!out_dir.empty()) options.out_dir = out_dir;
  mb::SweepReport report;
  {
    py::gil_scoped_release release;
    report = mb::run_sweep(config, options);
  }
  json j;
  j["version"] = mb::kSchemaVersion;
  j["name"] = report.name;
  j["kappa"] = report.kappa;
  j["cell_count"] = report.cells.size();
  j["failures"] = report.failures;
  j["algos"] = json::object();
  for (const auto& r : report.algos) j["algos"][r.algo] = mb::to_json(r, report.kappa);
  return j.dump();
}

py::dict objective_info(const std::string& text) {
  const mb::ObjectiveSpec s = mb::parse_objective(text);
  py::dict d;
  d["label"] = s.label();
  d["p_min"] = s.p_min();
  d["p_max"] = s.p_max();
  d["x_star"] = s.x_star();
  d["f_star"] = s.f_star();
  d["alpha"] = s.alpha();
  d["beta"] = s.beta();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Monotone stochastic convex minimization";

  py::register_exception<mb::MonotonicityViolation>(m, "MonotonicityViolation",
                                                    PyExc_RuntimeError);
  py::register_exception<mb::CertificationFailure>(m, "CertificationFailure",
                                                   PyExc_ValueError);

  m.def("run", &run, py::arg("algo"), py::arg("objective"), py::arg("T"), py::arg("seed"),
        py::arg("noise"), py::arg("diameter"), py::arg("overrides"), py::arg("with_trace"));
  m.def("sweep", &sweep, py::arg("config"), py::arg("workers") = 1, py::arg("out_dir") = "");
  m.def("objective_info", &objective_info, py::arg("objective"));
  m.def(
      "evaluate",
      [](const std::string& text, const std::vector<double>& xs) {
        const mb::ObjectiveSpec s = mb::parse_objective(text);
        std::vector<double> out;
        out.reserve(xs.size());
        for (double x : xs) out.push_back(s.eval(x));
        return out;
      },
      py::arg("objective"), py::arg("xs"));
  m.def(
      "certify",
      [](const std::string& text, int grid_points) {
        const mb::Certificate c = mb::certify(mb::parse_objective(text), grid_points);
        return std::make_pair(c.alpha_hat, c.beta_hat);
      },
      py::arg("objective"), py::arg("grid_points") = 1001);
  m.def("required_samples", &mb::required_samples, py::arg("alpha"), py::arg("gap"),
        py::arg("p"));
  m.def(
      "fit_regret_slope",
      [](const std::vector<std::pair<double, double>>& points) {
        const mb::SlopeFit f = mb::fit_regret_slope(points);
        return py::make_tuple(f.slope, f.intercept, f.r2);
      },
      py::arg("points"));
  m.def("verify", [] {
    std::vector<std::tuple<std::string, bool, std::string>> out;
    for (const auto& c : mb::run_property_suite()) out.emplace_back(c.name, c.passed, c.detail);
    return out;
  });
}
