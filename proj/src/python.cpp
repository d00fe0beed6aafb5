#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "msmoments/cli.hpp"
#include "msmoments/errors.hpp"
#include "msmoments/explicit_formula.hpp"
#include "msmoments/moments.hpp"
#include "msmoments/parallel.hpp"

namespace py = pybind11;
using namespace msm;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Prime sums, zeta-zero sums, the explicit formula and short-interval moments.";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<RangeError>(m, "RangeError", base.ptr());
  py::register_exception<FormatError>(m, "FormatError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<ResourceError>(m, "ResourceError", base.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());

  m.def("set_thread_count", &set_thread_count, py::arg("threads"));
  m.def("gaussian_moment", &gaussian_moment, py::arg("n"));

  py::class_<MangoldtTable>(m, "MangoldtTable")
      .def_property_readonly("limit", &MangoldtTable::limit)
      .def("__len__", [](const MangoldtTable& t) { return t.entries().size(); });
  m.def("build_mangoldt", &build_mangoldt, py::arg("limit"), py::call_guard<py::gil_scoped_release>());
  m.def("psi", &psi, py::arg("x"), py::arg("table"));
  m.def("short_interval_deviation", &short_interval_deviation, py::arg("x"), py::arg("delta"), py::arg("table"));

  py::class_<TestFunction>(m, "TestFunction")
      .def_readonly("name", &TestFunction::name)
      .def_readonly("kappa", &TestFunction::kappa)
      .def_readonly("support_radius", &TestFunction::support_radius)
      .def("__call__", [](const TestFunction& f, double t) { return f.eval(t); })
      .def("hat", &TestFunction::hat, py::arg("xi"));
  py::class_<WeightFunction>(m, "WeightFunction")
      .def_readonly("name", &WeightFunction::name)
      .def("__call__", [](const WeightFunction& f, double t) { return f.eval(t); })
      .def("hat", &WeightFunction::hat, py::arg("xi"));
  m.def("fejer", &fejer);
  m.def("fejer_weight", &fejer_weight);
  m.def("gauss_conv", &gauss_conv, py::arg("sigma"), py::arg("kappa") = 0.25);
  m.def("gauss_weight", &gauss_weight, py::arg("sigma") = 1.0);
  m.def("test_function", &test_function_by_name, py::arg("spec"));
  m.def("weight_function", &weight_function_by_name, py::arg("spec"));
  m.def(
      "validate",
      [](const TestFunction& eta) {
        const auto r = validate_class(eta);
        py::dict checks;
        for (const auto& c : r.checks) checks[py::str(c.name)] = c.passed;
        return py::make_tuple(r.passed(), checks, r.flags);
      },
      py::arg("eta"));

  py::class_<ZeroTable>(m, "ZeroTable")
      .def(py::init<std::vector<double>, std::string>(), py::arg("ordinates"), py::arg("source") = "python")
      .def_property_readonly("height", &ZeroTable::height)
      .def_property_readonly("source", &ZeroTable::source)
      .def("prefix", &ZeroTable::prefix, py::arg("count"))
      .def("__len__", &ZeroTable::size);
  m.def("load_zeros", &load_zeros, py::arg("path"));
  m.def("count_zeros", &count_zeros, py::arg("T"), py::arg("table"));
  m.def("rvm_prediction", &rvm_prediction, py::arg("T"));
  m.def("zeros_check_passed", [](const ZeroTable& t) { return check_zero_table(t).passed(); }, py::arg("table"));
  m.def(
      "s_moment", [](int j, double delta, const TestFunction& eta, const ZeroTable& zeros) {
        const auto r = s_moment(j, delta, eta, zeros);
        return py::make_tuple(r.value, r.tail);
      },
      py::arg("j"), py::arg("delta"), py::arg("eta"), py::arg("zeros"));
  m.def("fejer_beta", &fejer_beta);
  m.def("constant_C", [] {
    const auto c = constant_C();
    return py::make_tuple(c.assembled, c.collapsed);
  });

  m.def("main_term", &main_term, py::arg("x"), py::arg("delta"), py::arg("eta"));
  m.def("psi_eta", &psi_eta_direct, py::arg("x"), py::arg("delta"), py::arg("eta"), py::arg("table"));
  py::class_<ExplicitFormulaReport>(m, "ExplicitFormulaReport")
      .def_readonly("prime_side", &ExplicitFormulaReport::prime_side)
      .def_readonly("main_term", &ExplicitFormulaReport::main_term)
      .def_readonly("zero_side", &ExplicitFormulaReport::zero_side)
      .def_readonly("archimedean", &ExplicitFormulaReport::archimedean)
      .def_readonly("residual", &ExplicitFormulaReport::residual)
      .def_readonly("envelope", &ExplicitFormulaReport::envelope)
      .def_readonly("tail_estimate", &ExplicitFormulaReport::tail_estimate)
      .def_readonly("passed", &ExplicitFormulaReport::passed);
  m.def(
      "verify",
      [](double x, double delta, const TestFunction& eta, const ZeroTable& zeros, const MangoldtTable& table) {
        return verify(x, delta, eta, zeros, table);
      },
      py::arg("x"), py::arg("delta"), py::arg("eta"), py::arg("zeros"), py::arg("table"),
      py::call_guard<py::gil_scoped_release>());

  py::class_<MomentResult>(m, "MomentResult")
      .def_readonly("n", &MomentResult::n)
      .def_readonly("value", &MomentResult::value)
      .def_readonly("prediction_ms", &MomentResult::prediction_ms)
      .def_readonly("theorem_main_term", &MomentResult::theorem_main_term)
      .def_readonly("quadrature_error", &MomentResult::quadrature_error)
      .def_readonly("warnings", &MomentResult::warnings);
  m.def(
      "moment",
      [](int n, double X, double delta, const MangoldtTable& table, const TestFunction& eta,
         const WeightFunction& phi) {
        MomentRequest req;
        req.n = n;
        req.X = X;
        req.delta = delta;
        req.eta = eta;
        req.phi = phi;
        return moment_prime_side(req, table);
      },
      py::arg("n"), py::arg("X"), py::arg("delta"), py::arg("table"), py::arg("eta") = fejer(),
      py::arg("phi") = fejer_weight(), py::call_guard<py::gil_scoped_release>());
  m.def(
      "moment_required_limit",
      [](double X, double delta, const TestFunction& eta) {
        MomentRequest req;
        req.X = X;
        req.delta = delta;
        req.eta = eta;
        return moment_required_limit(req);
      },
      py::arg("X"), py::arg("delta"), py::arg("eta") = fejer());
  m.def(
      "moment_zero_side_pair",
      [](double X, double delta, const TestFunction& eta, const WeightFunction& phi, const ZeroTable& zeros) {
        return moment_zero_side_pair(X, delta, eta, phi, zeros).value;
      },
      py::arg("X"), py::arg("delta"), py::arg("eta"), py::arg("phi"), py::arg("zeros"),
      py::call_guard<py::gil_scoped_release>());
  m.def("ms_prediction", &ms_prediction, py::arg("n"), py::arg("delta"));
  m.def(
      "theorem_main_term", [](int m_, double delta, const TestFunction& eta) {
        return theorem_main_term(m_, delta, eta).value;
      },
      py::arg("m"), py::arg("delta"), py::arg("eta"));
  m.def("pairing_lower_bound", &pairing_lower_bound, py::arg("m"), py::arg("s2"), py::arg("s4"));
  m.def("brute_force_tuple_sum", &brute_force_tuple_sum, py::arg("m"), py::arg("delta"), py::arg("eta"),
        py::arg("ordinates"), py::arg("match_tol") = 1e-9, py::call_guard<py::gil_scoped_release>());
  m.def("exact_pairing_sum", &exact_pairing_sum, py::arg("m"), py::arg("delta"), py::arg("eta"),
        py::arg("ordinates"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
