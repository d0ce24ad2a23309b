#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "fjsq/analytic.hpp"
#include "fjsq/config.hpp"
#include "fjsq/errors.hpp"
#include "fjsq/figures.hpp"
#include "fjsq/fock.hpp"
#include "fjsq/protocol.hpp"
#include "fjsq/spectroscopy.hpp"

namespace py = pybind11;
using namespace fjsq;

namespace {

std::vector<double> to_list(const NumberDistribution& p) { return {p.probs().begin(), p.probs().end()}; }

py::dict summary(const ProtocolResult& res) {
  const SqueezeParams sq = squeeze_params_from_pair(res.pair);
  py::dict d;
  d["u"] = res.pair.u;
  d["v"] = res.pair.v;
  d["r_eff"] = sq.r;
  d["theta"] = sq.theta;
  d["displacement"] = res.displacement;
  d["elapsed_s"] = res.elapsed;
  d["final_omega_hz"] = res.final_omega.in_hz();
  return d;
}

nlohmann::json parse_document(const std::string& text, const char* what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
}

Protocol parse_protocol(const std::string& text, const TrapParams& trap) {
  return protocol_from_json(parse_document(text, "protocol"), trap);
}

}  // namespace

PYBIND11_MODULE(_fjsq, m) {
  m.doc() = "Frequency-jump squeezing of a trapped-atom oscillator";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<NumericError>(m, "NumericError", base.ptr());
  py::register_exception<ContractError>(m, "ContractError", base.ptr());
  py::register_exception<CutoffError>(m, "CutoffError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<TruncationError>(m, "TruncationError", base.ptr());

  m.attr("DEFAULT_FOCK_DIM") = kDefaultFockDim;

  // Fock space
  m.def("matrix_exponential", &matrix_exponential, py::arg("m"));
  m.def("squeeze_operator", &squeeze_operator_exact, py::arg("r"), py::arg("theta") = 0.0,
        py::arg("dim") = kDefaultFockDim);
  m.def("displacement_operator", &displacement_operator_exact, py::arg("alpha"), py::arg("dim") = kDefaultFockDim);
  m.def("free_evolution_operator", &free_evolution_operator, py::arg("omega"), py::arg("tau"),
        py::arg("dim") = kDefaultFockDim);
  m.def(
      "thermal_density_matrix", [](double nbar0, int dim) { return thermal_density_matrix(nbar0, dim).rho; },
      py::arg("nbar0"), py::arg("dim") = kDefaultFockDim);
  m.def(
      "number_distribution", [](const ComplexMatrix& rho) { return to_list(number_distribution(rho)); },
      py::arg("rho"));
  m.def("apply_unitary", &apply_unitary, py::arg("u"), py::arg("rho"));

  // Closed forms
  py::class_<BogoliubovPair>(m, "BogoliubovPair")
      .def(py::init<>())
      .def(py::init([](Complex u, Complex v) { return BogoliubovPair{u, v}; }), py::arg("u"), py::arg("v"))
      .def_readwrite("u", &BogoliubovPair::u)
      .def_readwrite("v", &BogoliubovPair::v)
      .def("invariant_defect", &BogoliubovPair::invariant_defect)
      .def("inverse", &BogoliubovPair::inverse)
      .def("__repr__", [](const BogoliubovPair& p) {
        return "BogoliubovPair(u=" + py::repr(py::cast(p.u)).cast<std::string>() +
               ", v=" + py::repr(py::cast(p.v)).cast<std::string>() + ")";
      });
  m.def(
      "jump", [](double omega_from, double omega_to) { return bogoliubov_from_jump(omega_from, omega_to).pair; },
      py::arg("omega_from"), py::arg("omega_to"));
  m.def("compose_wait", &compose_wait, py::arg("pair"), py::arg("phase"));
  m.def("compose_jump", &compose_jump, py::arg("pair"), py::arg("jump"));
  m.def(
      "squeeze_params",
      [](const BogoliubovPair& p) {
        const SqueezeParams s = squeeze_params_from_pair(p);
        return py::make_tuple(s.r, s.theta);
      },
      py::arg("pair"));
  m.def("squeeze_matrix_element_sq", &squeeze_matrix_element_sq, py::arg("n"), py::arg("l"), py::arg("r"));
  m.def("displacement_matrix_element_sq", &displacement_matrix_element_sq, py::arg("n"), py::arg("l"),
        py::arg("alpha"));
  m.def(
      "squeezed_thermal_moments",
      [](double nbar0, double s) {
        const SqueezedThermalMoments mo = squeezed_thermal_moments(nbar0, s);
        return py::make_tuple(mo.nbar_st, mo.dnbar_st);
      },
      py::arg("nbar0"), py::arg("s"));
  m.def("squeezing_db", &squeezing_db, py::arg("r"));
  m.def("squeeze_from_db", &squeeze_from_db, py::arg("db"));

  py::class_<TrapParams>(m, "TrapParams")
      .def(py::init(&TrapParams::experiment_defaults))
      .def_readwrite("omega1", &TrapParams::omega1)
      .def_readwrite("omega2", &TrapParams::omega2)
      .def_readwrite("mass", &TrapParams::mass)
      .def_readwrite("lattice_wavenumber", &TrapParams::lattice_wavenumber)
      .def_readwrite("V0", &TrapParams::V0)
      .def_readwrite("calibration", &TrapParams::calibration)
      .def_readwrite("recoil_override", &TrapParams::recoil_override)
      .def_property_readonly("q", &TrapParams::q)
      .def_property_readonly("recoil_energy", &TrapParams::recoil_energy)
      .def_property_readonly("harmonic_omega", &TrapParams::harmonic_omega);
  m.def("mathieu_energy", &mathieu_energy, py::arg("n"), py::arg("q"));
  m.def("bound_state_count", &bound_state_count, py::arg("trap"));
  m.def("coherent_alpha_from_shift", &coherent_alpha_from_shift, py::arg("d"), py::arg("trap"));

  // Spectroscopy
  py::class_<RabiParams>(m, "RabiParams")
      .def(py::init(&RabiParams::experiment_defaults))
      .def_readwrite("omega01", &RabiParams::omega01)
      .def_readwrite("gamma", &RabiParams::gamma)
      .def_readwrite("pulse_t", &RabiParams::pulse_t)
      .def_readwrite("n_max", &RabiParams::n_max);
  m.def(
      "sideband_ratio",
      [](const std::vector<double>& probs, const RabiParams& rabi) {
        return sideband_populations(NumberDistribution(probs), rabi).ratio;
      },
      py::arg("probs"), py::arg("rabi") = RabiParams::experiment_defaults());
  m.def("nbar_from_R", &nbar_from_R, py::arg("ratio"));

  // Protocols
  py::class_<Protocol>(m, "Protocol")
      .def_static("from_json", &parse_protocol, py::arg("text"), py::arg("trap") = TrapParams::experiment_defaults())
      .def_static(
          "builtin",
          [](const std::string& name, const TrapParams& trap, int n_jumps, double alpha_i) {
            return builtin_protocol(parse_builtin(name), trap, BuiltinOptions{n_jumps, alpha_i});
          },
          py::arg("name"), py::arg("trap") = TrapParams::experiment_defaults(), py::arg("n_jumps") = 2,
          py::arg("alpha_i") = 0.67)
      .def("to_json", [](const Protocol& p) { return protocol_to_json(p).dump(); })
      .def("inverse", &inverse_protocol)
      .def_property_readonly("total_wait", &Protocol::total_wait)
      .def("__len__", [](const Protocol& p) { return p.steps.size(); });
  m.def(
      "run_symplectic", [](const Protocol& p) { return summary(run_symplectic(p)); }, py::arg("protocol"));
  m.def(
      "run_fock",
      [](const Protocol& p, const ComplexMatrix& rho) {
        const ProtocolResult res = run_fock(p, rho);
        py::dict d = summary(res);
        d["rho"] = res.final_rho;
        return d;
      },
      py::arg("protocol"), py::arg("rho"));
  m.def(
      "implied_distribution",
      [](const Protocol& p, double nbar0, int n_max, int dim) {
        return to_list(implied_distribution(run_symplectic(p), nbar0, n_max, dim));
      },
      py::arg("protocol"), py::arg("nbar0"), py::arg("n_max") = 20, py::arg("dim") = kDefaultFockDim);

  // Figures
  m.attr("FIGURES") = [] {
    std::vector<std::string> names;
    for (FigureId id : kAllFigures) names.emplace_back(figure_name(id));
    return names;
  }();
  m.def(
      "figure",
      [](const std::string& name, const std::string& config_json) {
        const Config cfg = config_json.empty() ? Config{} : config_from_json(parse_document(config_json, "config"));
        const CurveTable t = generate(cfg.figure_spec(parse_figure(name)));
        py::dict columns;
        for (std::size_t k = 0; k < t.names.size(); ++k) columns[py::str(t.names[k])] = t.columns[k];
        py::dict meta;
        for (const auto& [k, v] : t.metadata) meta[py::str(k)] = v;
        return py::make_tuple(columns, meta);
      },
      py::arg("name"), py::arg("config_json") = "",
      "Returns (columns, metadata) for a figure id; config_json overrides the defaults.");
  m.def(
      "figure_csv",
      [](const std::string& name) { return format_csv(generate(default_figure_spec(parse_figure(name)))); },
      py::arg("name"));
}
