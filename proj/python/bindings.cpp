#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qcorr/check.hpp"
#include "qcorr/closed_form.hpp"
#include "qcorr/dimer.hpp"
#include "qcorr/oracle.hpp"
#include "qcorr/sweep.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace qcorr;

namespace {

// Python sees density matrices as plain 4x4 complex numpy arrays.
DensityMatrix4 as_state(const Mat4& m) { return DensityMatrix4(m); }

Party party_arg(const std::string& s) { return parse_party(s); }

}  // namespace

PYBIND11_MODULE(_qcorr, m) {
  m.doc() = "Quantum discord, geometric discord and MIN for two-qubit states";

  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::class_<DimerParams>(m, "DimerParams")
      .def(py::init(&DimerParams::make), py::arg("beta"), py::arg("epsilon"))
      .def_readonly("beta", &DimerParams::beta)
      .def_readonly("epsilon", &DimerParams::epsilon)
      .def("__repr__", [](const DimerParams& p) {
        return "DimerParams(beta=" + std::to_string(p.beta) +
               ", epsilon=" + std::to_string(p.epsilon) + ")";
      });

  py::class_<PhysicalParams>(m, "PhysicalParams")
      .def(py::init<>())
      .def_readwrite("gamma", &PhysicalParams::gamma)
      .def_readwrite("r12", &PhysicalParams::r12)
      .def_readwrite("alpha12", &PhysicalParams::alpha12)
      .def_readwrite("h0", &PhysicalParams::h0)
      .def_readwrite("temperature", &PhysicalParams::temperature)
      .def_readwrite("tau", &PhysicalParams::tau)
      .def_property_readonly("eta", &PhysicalParams::eta)
      .def_property_readonly("omega", &PhysicalParams::omega);

  py::class_<XStateParams>(m, "XStateParams")
      .def_readonly("a", &XStateParams::a)
      .def_readonly("b", &XStateParams::b)
      .def_readonly("c", &XStateParams::c)
      .def_readonly("d", &XStateParams::d)
      .def_readonly("e_mag", &XStateParams::e_mag)
      .def_readonly("z", &XStateParams::z);

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("hermiticity_violation", &ValidationReport::hermiticity_violation)
      .def_readonly("trace_deviation", &ValidationReport::trace_deviation)
      .def_readonly("min_eigenvalue", &ValidationReport::min_eigenvalue)
      .def_property_readonly("ok", &ValidationReport::ok);

  py::class_<MeasurementAxis>(m, "MeasurementAxis")
      .def(py::init<double, double>(), py::arg("theta"), py::arg("phi"))
      .def_readwrite("theta", &MeasurementAxis::theta)
      .def_readwrite("phi", &MeasurementAxis::phi)
      .def("direction", &MeasurementAxis::direction);

  py::class_<OptimizerConfig>(m, "OptimizerConfig")
      .def(py::init<>())
      .def_readwrite("grid_theta", &OptimizerConfig::grid_theta)
      .def_readwrite("grid_phi", &OptimizerConfig::grid_phi)
      .def_readwrite("refine_iters", &OptimizerConfig::refine_iters)
      .def_readwrite("tol", &OptimizerConfig::tol);

  py::class_<OracleResult>(m, "OracleResult")
      .def_readonly("value", &OracleResult::value)
      .def_readonly("axis", &OracleResult::axis)
      .def_readonly("grid_value", &OracleResult::grid_value)
      .def_readonly("evaluations", &OracleResult::evaluations);

  py::class_<MinOracleResult, OracleResult>(m, "MinOracleResult")
      .def_property_readonly("branch", [](const MinOracleResult& r) { return to_string(r.branch); })
      .def_readonly("eigen_gap", &MinOracleResult::eigen_gap);

  py::class_<GqdOracleResult>(m, "GqdOracleResult")
      .def_readonly("value", &GqdOracleResult::value)
      .def_readonly("measurement_value", &GqdOracleResult::measurement_value)
      .def_readonly("k_max", &GqdOracleResult::k_max)
      .def_readonly("axis", &GqdOracleResult::axis);

  py::class_<XiComponents>(m, "XiComponents")
      .def_readonly("kappa", &XiComponents::kappa)
      .def_readonly("p0", &XiComponents::p0)
      .def_readonly("p1", &XiComponents::p1)
      .def_readonly("phi0", &XiComponents::phi0)
      .def_readonly("phi1", &XiComponents::phi1)
      .def_readonly("f0", &XiComponents::f0)
      .def_readonly("f1", &XiComponents::f1)
      .def_readonly("xi", &XiComponents::xi);

  // density core
  m.def("validate", py::overload_cast<const Mat4&>(&validate), py::arg("rho"));
  m.def(
      "partial_trace",
      [](const Mat4& rho, const std::string& keep) {
        return Mat2(partial_trace(as_state(rho), party_arg(keep)).matrix());
      },
      py::arg("rho"), py::arg("keep"));
  m.def(
      "von_neumann_entropy",
      [](const Eigen::MatrixXcd& rho) { return von_neumann_entropy(rho); }, py::arg("rho"));
  m.def(
      "eigenvalues_hermitian",
      [](const Eigen::MatrixXcd& mat) -> std::vector<double> {
        if (mat.rows() == 2 && mat.cols() == 2) {
          const auto ev = eigenvalues_hermitian(Mat2(mat));
          return {ev.begin(), ev.end()};
        }
        if (mat.rows() == 4 && mat.cols() == 4) {
          const auto ev = eigenvalues_hermitian(Mat4(mat));
          return {ev.begin(), ev.end()};
        }
        throw std::invalid_argument("eigenvalues_hermitian expects a 2x2 or 4x4 matrix");
      },
      py::arg("m"));
  m.def(
      "hs_norm_sq", [](const Eigen::MatrixXcd& mat) { return hs_norm_sq(mat); }, py::arg("m"));
  m.def(
      "bloch_decompose",
      [](const Mat4& rho) {
        const auto b = bloch_decompose(as_state(rho));
        return py::make_tuple(b.x, b.y, b.t);
      },
      py::arg("rho"), "Returns (x, y, T).");
  m.def(
      "apply_measurement",
      [](const Mat4& rho, const MeasurementAxis& axis, const std::string& party) {
        return Mat4(apply_measurement(as_state(rho), axis, party_arg(party)).matrix());
      },
      py::arg("rho"), py::arg("axis"), py::arg("party"));

  // dimer state
  m.def("xstate_params", &xstate_params, py::arg("params"));
  m.def("xstate_params_at_phase", &xstate_params_at_phase, py::arg("beta"), py::arg("eta_tau"));
  m.def(
      "build_density", [](const XStateParams& xp) { return Mat4(build_density(xp).matrix()); },
      py::arg("xp"));
  m.def(
      "dimer_state", [](const DimerParams& p) { return Mat4(dimer_state(p).matrix()); },
      py::arg("params"));
  m.def(
      "thermal_state", [](double beta) { return Mat4(thermal_state(beta).matrix()); },
      py::arg("beta"));
  m.def("hamiltonian_mq", &hamiltonian_mq, py::arg("eta"));
  m.def(
      "evolve",
      [](const Mat4& rho0, const Mat4& h, double tau) {
        return Mat4(evolve(as_state(rho0), h, tau).matrix());
      },
      py::arg("rho0"), py::arg("h"), py::arg("tau"));
  m.def("derive_dimer_params", &derive_dimer_params, py::arg("physical"));

  // closed forms
  m.def("xi", &xi, py::arg("kappa"), py::arg("params"));
  m.def("xi_min", &xi_min, py::arg("params"));
  m.def("reduced_entropy_closed", &reduced_entropy_closed, py::arg("params"));
  m.def("reduced_entropy_literal", &reduced_entropy_literal, py::arg("params"));
  m.def("mutual_information_closed",
        py::overload_cast<const DimerParams&>(&qcorr::mutual_information), py::arg("params"));
  m.def("classical_correlation", &classical_correlation, py::arg("params"));
  m.def("qd_closed", &qd_closed, py::arg("params"));
  m.def("qd_literal", &qd_literal, py::arg("params"));
  m.def("gqd_closed", &gqd_closed, py::arg("xp"));
  m.def("min_closed", &min_closed, py::arg("xp"));
  m.def("dimer_spectrum", &dimer_spectrum, py::arg("beta"));

  // oracles
  m.def(
      "qd_oracle",
      [](const Mat4& rho, const OptimizerConfig& cfg, const std::string& party) {
        return qd_oracle(as_state(rho), cfg, party_arg(party));
      },
      py::arg("rho"), py::arg("cfg") = OptimizerConfig{}, py::arg("measured") = "N");
  m.def(
      "gqd_oracle",
      [](const Mat4& rho, const OptimizerConfig& cfg, const std::string& party) {
        return gqd_oracle(as_state(rho), cfg, party_arg(party));
      },
      py::arg("rho"), py::arg("cfg") = OptimizerConfig{}, py::arg("measured") = "M");
  m.def(
      "min_oracle",
      [](const Mat4& rho, const OptimizerConfig& cfg, double degeneracy_tol,
         const std::string& party) {
        return min_oracle(as_state(rho), cfg, degeneracy_tol, party_arg(party));
      },
      py::arg("rho"), py::arg("cfg") = OptimizerConfig{}, py::arg("degeneracy_tol") = 1e-8,
      py::arg("measured") = "M");

  // sweeps
  m.def(
      "sweep_csv",
      [](const std::string& beta, const std::string& eps, const std::string& measures,
         const std::string& method, int workers, const std::string& out) {
        SweepSpec spec;
        spec.beta_values = parse_values(beta);
        spec.epsilon_values = parse_values(eps);
        spec.measures = parse_measures(measures);
        spec.method = parse_method(method);
        spec.workers = workers;
        spec.output_path = out;
        py::gil_scoped_release release;
        return format_csv(run_sweep(spec));
      },
      py::arg("beta"), py::arg("eps"), py::arg("measures") = "qd,gqd,min",
      py::arg("method") = "closed", py::arg("workers") = 1, py::arg("out") = "",
      "Runs a sweep and returns the CSV text; also writes it when `out` is set.");
  m.def(
      "run_check",
      [](std::uint64_t seed, int workers) {
        CheckOptions opts;
        opts.seed = seed;
        opts.workers = workers;
        CheckReport report;
        {
          py::gil_scoped_release release;
          report = run_check(opts);
        }
        return py::make_tuple(report.passed(), report.to_string());
      },
      py::arg("seed") = CheckOptions{}.seed, py::arg("workers") = 1,
      "Returns (passed, report_text).");

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
