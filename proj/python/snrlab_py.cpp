#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "snrlab/architectures.hpp"
#include "snrlab/common.hpp"
#include "snrlab/experiment.hpp"
#include "snrlab/noise_model.hpp"
#include "snrlab/scene.hpp"
#include "snrlab/snr_analysis.hpp"
#include "snrlab/walsh_hadamard.hpp"

namespace py = pybind11;
using namespace snrlab;

namespace {

py::array_t<double> to_array(const std::vector<double>& v) {
  py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::array_t<double> to_array(std::span<const double> v) { return to_array(std::vector<double>(v.begin(), v.end())); }

SensingOperator make_operator(std::size_t n, std::optional<std::vector<std::size_t>> permutation) {
  if (permutation) return SensingOperator(TransformSize(n), std::move(*permutation));
  return SensingOperator(TransformSize(n));
}

py::dict estimate_dict(const SnrEstimate& e) {
  py::dict d;
  d["arch"] = std::string(to_string(e.arch));
  d["n"] = e.n;
  d["trials"] = e.trials;
  d["signal_power"] = e.signal_power;
  d["noise_power"] = e.noise_power;
  d["snr_linear"] = e.snr_linear;
  d["snr_db"] = e.snr_db;
  d["theory_linear"] = e.theory_linear;
  d["oracle_linear"] = e.oracle_linear;
  d["bound_linear"] = e.bound_linear;
  return d;
}

py::dict theory_dict(const TheoryRow& r) {
  py::dict d;
  d["n"] = r.n;
  d["lci_theory"] = r.lci_theory;
  d["lci_bound"] = r.lci_bound;
  d["pai_theory"] = r.pai_theory;
  d["lai_theory"] = r.lai_theory;
  d["ratio_lci_pai"] = r.ratio_lci_pai;
  d["ratio_lci_lai"] = r.ratio_lci_lai;
  return d;
}

py::dict oracle_dict(const OracleRow& r) {
  py::dict d;
  d["n"] = r.n;
  d["trials"] = r.trials;
  d["signal_power"] = r.signal_power;
  d["oracle_variance"] = r.oracle_variance;
  d["mc_noise_power"] = r.mc_noise_power;
  d["theory_linear"] = r.theory_linear;
  d["oracle_linear"] = r.oracle_linear;
  d["mc_linear"] = r.mc_linear;
  d["theory_oracle_snr_gap"] = r.gap_theory_oracle;
  d["mc_oracle_noise_gap"] = r.gap_mc_oracle;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of snrlab";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<SizeError>(m, "SizeError", error.ptr());
  py::register_exception<DomainError>(m, "DomainError", error.ptr());
  py::register_exception<CapacityError>(m, "CapacityError", error.ptr());
  py::register_exception<IoError>(m, "IoError", error.ptr());
  py::register_exception<AggregationError>(m, "AggregationError", error.ptr());
  py::register_exception<UsageError>(m, "UsageError", error.ptr());

  m.def(
      "fwht", [](const std::vector<double>& v) { return to_array(fwht(v)); }, py::arg("values"),
      "Unnormalized Walsh-Hadamard transform in Sylvester order.");

  py::class_<SensingOperator>(m, "SensingOperator")
      .def(py::init(&make_operator), py::arg("n"), py::arg("permutation") = std::nullopt)
      .def_static(
          "with_random_permutation",
          [](std::size_t n, std::uint64_t seed) { return SensingOperator::with_random_permutation(TransformSize(n), seed); },
          py::arg("n"), py::arg("seed"))
      .def_property_readonly("n", [](const SensingOperator& op) { return op.size().value(); })
      .def_property_readonly("permutation", &SensingOperator::permutation)
      .def(
          "apply", [](const SensingOperator& op, const std::vector<double>& x) { return to_array(op.apply(x)); },
          py::arg("x"))
      .def(
          "apply_inverse",
          [](const SensingOperator& op, const std::vector<double>& z) { return to_array(op.apply_inverse(z)); },
          py::arg("z"))
      .def("materialize", &SensingOperator::materialize, py::arg("dense_limit") = kDefaultDenseLimit);

  m.def(
      "flat_scene", [](std::size_t n, double x0) { return to_array(flat_scene(TransformSize(n), x0).pixels()); },
      py::arg("n"), py::arg("x0"));
  m.def(
      "random_uniform_scene",
      [](std::size_t n, std::int64_t x0, std::uint64_t seed) {
        RandomStream stream(seed);
        return to_array(random_uniform_scene(TransformSize(n), x0, stream).pixels());
      },
      py::arg("n"), py::arg("x0"), py::arg("seed"));

  m.def(
      "lci_variance_oracle",
      [](const std::vector<double>& scene, double sigma, std::optional<std::vector<std::size_t>> permutation) {
        const SensingOperator op = make_operator(scene.size(), std::move(permutation));
        return lci_variance_oracle(SceneVector(scene), op, sigma);
      },
      py::arg("scene"), py::arg("sigma"), py::arg("permutation") = std::nullopt,
      "Exact total variance of the LCI reconstruction for one scene.");

  m.def(
      "run_trial",
      [](const std::string& arch, const std::vector<double>& scene, double sigma, double rho, double gain,
         std::uint64_t seed, bool shot) {
        const SceneVector x(scene);
        const NoiseParams params{sigma, rho, shot};
        params.validate();
        RandomStream stream(seed);
        TrialResult r;
        switch (parse_architecture(arch)) {
          case Architecture::lci:
            r = run_lci_trial(x, SensingOperator(TransformSize(x.size())), params, stream);
            break;
          case Architecture::pai:
            r = run_pai_trial(x, params, stream);
            break;
          case Architecture::lai:
            r = run_lai_trial(x, LensGain(gain), params, stream);
            break;
        }
        return py::make_tuple(to_array(r.reconstructed), r.residual_power);
      },
      py::arg("arch"), py::arg("scene"), py::arg("sigma") = 5.0, py::arg("rho") = 5.0, py::arg("gain") = 100.0,
      py::arg("seed") = 0, py::arg("shot") = true, "One noisy trial. Returns (reconstruction, residual power).");

  m.def("snr_lci_theory", &snr_lci_theory, py::arg("x0"), py::arg("sigma"), py::arg("n"));
  m.def("snr_lci_bound", &snr_lci_bound, py::arg("x0"), py::arg("sigma"));
  m.def("snr_pai_theory", &snr_pai_theory, py::arg("x0"), py::arg("rho"), py::arg("n"));
  m.def("snr_lai_theory", &snr_lai_theory, py::arg("x0"), py::arg("rho"), py::arg("n"), py::arg("g"));
  m.def("ratio_lci_pai", &ratio_lci_pai, py::arg("x0"), py::arg("sigma"), py::arg("rho"), py::arg("n"));
  m.def("ratio_lci_lai", &ratio_lci_lai, py::arg("x0"), py::arg("sigma"), py::arg("rho"), py::arg("n"),
        py::arg("g"));
  m.def("to_db", &to_db, py::arg("linear"));
  m.def("theory_crossover_n", &theory_crossover_n, py::arg("x0"), py::arg("sigma"), py::arg("rho"),
        py::arg("max_log2n") = 40);

  py::class_<SweepConfig>(m, "SweepConfig")
      .def(py::init<>())
      .def_static(
          "from_json", [](const std::string& text) { return parse_config_json(text); }, py::arg("text"))
      .def_property(
          "architectures",
          [](const SweepConfig& c) {
            std::vector<std::string> names;
            for (Architecture a : c.architectures) names.emplace_back(to_string(a));
            return names;
          },
          [](SweepConfig& c, const std::vector<std::string>& names) {
            std::vector<Architecture> archs;
            for (const std::string& name : names) archs.push_back(parse_architecture(name));
            c.architectures = std::move(archs);
          })
      .def_readwrite("log2n_min", &SweepConfig::log2n_min)
      .def_readwrite("log2n_max", &SweepConfig::log2n_max)
      .def_readwrite("trials", &SweepConfig::trials)
      .def_readwrite("x0", &SweepConfig::x0)
      .def_readwrite("sigma", &SweepConfig::sigma)
      .def_readwrite("rho", &SweepConfig::rho)
      .def_readwrite("gain", &SweepConfig::gain)
      .def_readwrite("shot_enabled", &SweepConfig::shot_enabled)
      .def_property(
          "scene", [](const SweepConfig& c) { return c.scene.to_string(); },
          [](SweepConfig& c, const std::string& text) { c.scene = SceneSpec::parse(text); })
      .def_readwrite("seed", &SweepConfig::master_seed)
      .def_readwrite("permute", &SweepConfig::permute)
      .def_readwrite("workers", &SweepConfig::workers)
      .def_readwrite("oracle_max_log2n", &SweepConfig::oracle_max_log2n)
      .def("validate", &SweepConfig::validate);

  m.def(
      "run_sweep",
      [](const SweepConfig& c) {
        std::vector<SnrEstimate> rows;
        {
          py::gil_scoped_release release;
          rows = run_sweep(c);
        }
        py::list out;
        for (const SnrEstimate& e : rows) out.append(estimate_dict(e));
        return out;
      },
      py::arg("config"), "Monte Carlo sweep; one dict per (architecture, n).");
  m.def(
      "sweep_csv", [](const SweepConfig& c) { return sweep_csv(run_sweep(c), c.master_seed); }, py::arg("config"),
      py::call_guard<py::gil_scoped_release>(), "Monte Carlo sweep rendered as the CLI's CSV.");
  m.def(
      "run_theory",
      [](const SweepConfig& c) {
        py::list out;
        for (const TheoryRow& r : run_theory(c)) out.append(theory_dict(r));
        return out;
      },
      py::arg("config"));
  m.def(
      "run_oracle",
      [](const SweepConfig& c) {
        std::vector<OracleRow> rows;
        {
          py::gil_scoped_release release;
          rows = run_oracle(c);
        }
        py::list out;
        for (const OracleRow& r : rows) out.append(oracle_dict(r));
        return out;
      },
      py::arg("config"));
}
