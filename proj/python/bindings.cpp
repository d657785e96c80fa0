#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "rkdg/cli.hpp"
#include "rkdg/config.hpp"
#include "rkdg/diagnostics.hpp"
#include "rkdg/dg_ops1d.hpp"
#include "rkdg/harness.hpp"
#include "rkdg/multidim.hpp"
#include "rkdg/projections.hpp"
#include "rkdg/spectral.hpp"
#include "rkdg/systems.hpp"
#include "rkdg/time_integration.hpp"

namespace py = pybind11;
using namespace rkdg;

namespace {

py::object to_python(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::dict info_dict(const OperatorInfo& i) {
  py::dict d;
  d["scheme"] = i.scheme;
  d["order"] = i.order;
  d["beta"] = i.beta;
  d["thetas"] = i.thetas;
  d["block"] = i.block;
  d["cells"] = i.cells;
  d["components"] = i.components;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Runge-Kutta discontinuous Galerkin operators, projections and verification studies";

  py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InvalidArgument& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<Mesh1D>(m, "Mesh1D")
      .def(py::init<std::vector<double>, double>(), py::arg("boundaries"), py::arg("max_ratio") = 2.0)
      .def_static("uniform", &Mesh1D::uniform, py::arg("a"), py::arg("b"), py::arg("cells"))
      .def_static("quasi_uniform", &Mesh1D::quasi_uniform, py::arg("a"), py::arg("b"), py::arg("cells"),
                  py::arg("ratio"), py::arg("seed"))
      .def_property_readonly("cells", &Mesh1D::cells)
      .def_property_readonly("h", &Mesh1D::h)
      .def_property_readonly("boundaries", &Mesh1D::boundaries)
      .def("dual", &Mesh1D::dual);

  py::class_<Mesh2D>(m, "Mesh2D")
      .def(py::init([](const Mesh1D& x, const Mesh1D& y) { return Mesh2D{x, y}; }), py::arg("x"), py::arg("y"))
      .def_readonly("x", &Mesh2D::x)
      .def_readonly("y", &Mesh2D::y)
      .def_property_readonly("h", &Mesh2D::h);

  py::class_<DGFunction>(m, "DGFunction")
      .def(py::init<Mesh1D, int, Vector>(), py::arg("mesh"), py::arg("degree"), py::arg("coefficients"))
      .def_property_readonly("mesh", &DGFunction::mesh)
      .def_property_readonly("degree", &DGFunction::degree)
      .def_property_readonly("coefficients", [](const DGFunction& u) { return u.coefficients(); })
      .def("__call__", [](const DGFunction& u, double x) { return evaluate(u, x); }, py::arg("x"))
      .def("integral", &DGFunction::integral)
      .def("norm", [](const DGFunction& u) { return l2_norm(u); });

  m.def("l2_project", &l2_project, py::arg("f"), py::arg("mesh"), py::arg("k"), py::arg("quad_order") = 0);
  m.def("l2_error", &l2_error, py::arg("u"), py::arg("exact"), py::arg("quad_order") = 0);
  m.def("pi_theta", &pi_theta, py::arg("w"), py::arg("mesh"), py::arg("k"), py::arg("theta"), py::arg("quad_order") = 0);
  m.def("composed_projection", &composed_projection, py::arg("w"), py::arg("q"), py::arg("theta0"), py::arg("thetas"),
        py::arg("mesh"), py::arg("k"), py::arg("quad_order") = 0,
        "w(x, d) returns the d-th derivative of the target function");

  py::class_<LinearOperator>(m, "LinearOperator")
      .def_property_readonly("dim", &LinearOperator::dim)
      .def_property_readonly("info", [](const LinearOperator& op) { return info_dict(op.info()); })
      .def("apply", &LinearOperator::apply, py::arg("x"))
      .def("__matmul__", &LinearOperator::apply)
      .def("dense", &LinearOperator::dense)
      .def("sparse", [](const LinearOperator& op) { return op.matrix(); })
      .def("transpose", &LinearOperator::transpose);

  m.def("assemble_d_theta", &assemble_d_theta, py::arg("mesh"), py::arg("k"), py::arg("theta"));
  m.def(
      "assemble_high_order_lh",
      [](const Mesh1D& mesh, int k, int q, double beta, double theta0, std::vector<double> thetas) {
        return assemble_high_order_lh(mesh, k, LdgParams{q, beta, theta0, std::move(thetas)});
      },
      py::arg("mesh"), py::arg("k"), py::arg("q"), py::arg("beta"), py::arg("theta0") = 1.0,
      py::arg("thetas") = std::vector<double>{});
  m.def("assemble_ultraweak3", &assemble_ultraweak3, py::arg("mesh"), py::arg("k"), py::arg("beta") = -1.0);
  m.def(
      "assemble_wave_alphabeta",
      [](const Mesh1D& mesh, int k, double alpha, double beta1, double beta2) {
        return assemble_wave_alphabeta(mesh, k, WaveFlux{alpha, beta1, beta2});
      },
      py::arg("mesh"), py::arg("k"), py::arg("alpha") = 0.5, py::arg("beta1") = 0.0, py::arg("beta2") = 0.0);
  m.def("assemble_energy_conserving", &assemble_energy_conserving, py::arg("mesh"), py::arg("k"));
  m.def("assemble_central_dg", &assemble_central_dg, py::arg("mesh"), py::arg("k"), py::arg("tau_max"));
  m.def("assemble_qk_2d", &assemble_qk_2d, py::arg("mesh"), py::arg("k"), py::arg("theta1"), py::arg("theta2"));
  m.def(
      "pi_tensor_2d",
      [](const Function2D& w, const Mesh2D& mesh, int k, double t1, double t2) {
        return pi_tensor_2d(w, mesh, k, t1, t2).coefficients();
      },
      py::arg("w"), py::arg("mesh"), py::arg("k"), py::arg("theta1"), py::arg("theta2"));

  m.def("operator_norm", [](const LinearOperator& op) { return operator_norm(op).value; }, py::arg("op"));
  m.def("semiboundedness_mu", [](const LinearOperator& op) { return semiboundedness_mu(op).mu; }, py::arg("op"));
  m.def("skewness_defect", &skewness_defect, py::arg("op"));

  py::class_<RKScheme>(m, "RKScheme")
      .def_readonly("alpha", &RKScheme::alpha)
      .def_readonly("order", &RKScheme::order)
      .def_readonly("name", &RKScheme::name)
      .def_property_readonly("stages", &RKScheme::stages)
      .def("amplification", &RKScheme::amplification, py::arg("z"));
  m.def("taylor_rk", &taylor_rk, py::arg("p"));
  m.def("custom_rk", &custom_rk, py::arg("alpha"), py::arg("name") = "custom");
  m.def("rk_preset", &rk_preset, py::arg("name"));
  m.def("two_step", &two_step, py::arg("base"));

  m.def(
      "evolve",
      [](const RKScheme& s, const LinearOperator& op, const Vector& u0, double T, double tau) {
        const auto r = evolve(s, op, u0, T, tau);
        return py::make_tuple(r.u, r.steps);
      },
      py::arg("scheme"), py::arg("op"), py::arg("u0"), py::arg("T"), py::arg("tau"),
      "returns (u(T), number of steps)");
  m.def("amplification_norm", &amplification_norm, py::arg("scheme"), py::arg("tau"), py::arg("op"));
  m.def("expm_reference", &expm_reference, py::arg("op"), py::arg("t"), py::arg("u0"));
  m.def("sigma_factor", &sigma_factor, py::arg("a"), py::arg("t"));
  m.def(
      "stability_scan",
      [](const RKScheme& s, const LinearOperator& op, const std::vector<double>& lambdas, int jobs) {
        return to_python(stability_json(stability_scan(s, op, lambdas, jobs)));
      },
      py::arg("scheme"), py::arg("op"), py::arg("lambdas"), py::arg("jobs") = 1);

  py::class_<FourierFunction>(m, "FourierFunction")
      .def_property_readonly("cutoff", &FourierFunction::cutoff)
      .def_property_readonly("components", &FourierFunction::components)
      .def_property_readonly("dimension", &FourierFunction::dimension)
      .def_property_readonly("coefficients", [](const FourierFunction& f) { return f.coefficients(); })
      .def("evaluate", &FourierFunction::evaluate, py::arg("x1"), py::arg("x2") = 0.0)
      .def("norm", &FourierFunction::norm)
      .def("conjugate_symmetry_defect", &FourierFunction::conjugate_symmetry_defect);
  m.def("fourier_truncate", &fourier_truncate, py::arg("f"), py::arg("cutoff"), py::arg("components"),
        py::arg("dimension"), py::arg("samples") = 0);
  py::class_<FourierOperator>(m, "FourierOperator")
      .def(py::init<std::vector<Eigen::MatrixXd>, int>(), py::arg("a"), py::arg("cutoff"))
      .def("apply", py::overload_cast<const FourierFunction&>(&FourierOperator::apply, py::const_), py::arg("u"));
  m.def("fourier_l2_error", &fourier_l2_error, py::arg("u"), py::arg("exact"), py::arg("reference_cutoff"));
  m.def("fourier_skewness", &fourier_skewness, py::arg("op"), py::arg("v"));

  m.def(
      "check_operators", [](int k, int cells, std::uint64_t seed) { return to_python(checks_json(check_operators(k, cells, seed))); },
      py::arg("k") = 1, py::arg("cells") = 16, py::arg("seed") = 1);
  m.def(
      "check_projections",
      [](int k, int cells, std::uint64_t seed) { return to_python(checks_json(check_projections(k, cells, seed))); },
      py::arg("k") = 1, py::arg("cells") = 16, py::arg("seed") = 1);
  m.def(
      "run_experiment",
      [](const std::string& path, int jobs) {
        const ExperimentConfig c = load_config(path);
        ConvergenceReport r;
        if (c.study == "spatial") {
          r = run_spatial_convergence(c.spatial(jobs));
        } else if (c.study == "temporal") {
          r = run_temporal_convergence(c.temporal(jobs));
        } else if (c.study == "compare_semidiscrete") {
          r = compare_semidiscrete(c.compare(jobs));
        } else {
          throw InvalidArgument("run_experiment handles spatial, temporal and compare_semidiscrete studies");
        }
        return to_python(report_json(r));
      },
      py::arg("config"), py::arg("jobs") = 1);
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "returns (exit code, stdout text, stderr text)");
}
