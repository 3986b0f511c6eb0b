#include "modsplit/coefficients.hpp"
#include "modsplit/derivop.hpp"
#include "modsplit/diagnostics.hpp"
#include "modsplit/models.hpp"

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace modsplit;

namespace {

DerivativeWord word(const std::string& text) { return DerivativeWord::parse(text); }

Matrix stack_rows(const RunRecord& r, bool momenta) {
  const auto n = r.states.empty() ? Eigen::Index{0} : static_cast<Eigen::Index>(r.states.front().dim());
  Matrix out(static_cast<Eigen::Index>(r.size()), n);
  for (std::size_t i = 0; i < r.size(); ++i)
    out.row(static_cast<Eigen::Index>(i)) = (momenta ? r.states[i].p() : r.states[i].q()).transpose();
  return out;
}

Precision precision_from(const std::string& name) {
  if (name == "standard") return Precision::standard;
  if (name == "extended") return Precision::extended;
  throw ConfigError("precision must be \"standard\" or \"extended\"");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Higher-order kick-move-kick integrators for separable Hamiltonians";

  auto config_error = py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);
  (void)config_error;

  py::class_<PhaseState>(m, "PhaseState")
      .def(py::init<Vector, Vector>(), py::arg("q"), py::arg("p"))
      .def_property_readonly("q", [](const PhaseState& s) { return s.q(); })
      .def_property_readonly("p", [](const PhaseState& s) { return s.p(); })
      .def_property_readonly("dim", &PhaseState::dim)
      .def("__repr__", [](const PhaseState& s) {
        return "PhaseState(dim=" + std::to_string(s.dim()) + ")";
      });

  py::class_<SchemeConfig>(m, "SchemeConfig")
      .def(py::init([](int order, double tau, double push_tol, int push_max_iter) {
             SchemeConfig c{order, tau, push_tol, push_max_iter};
             c.validate();
             return c;
           }),
           py::arg("order") = 2, py::arg("tau") = 0.1, py::arg("push_tol") = 1e-14, py::arg("push_max_iter") = 25)
      .def_readwrite("order", &SchemeConfig::order)
      .def_readwrite("tau", &SchemeConfig::tau)
      .def_readwrite("push_tol", &SchemeConfig::push_tol)
      .def_readwrite("push_max_iter", &SchemeConfig::push_max_iter)
      .def("validate", &SchemeConfig::validate);

  py::class_<PushReport>(m, "PushReport")
      .def_readonly("iterations", &PushReport::iterations)
      .def_readonly("final_residual", &PushReport::final_residual)
      .def_readonly("converged", &PushReport::converged)
      .def_readonly("contracting", &PushReport::contracting)
      .def_readonly("residuals", &PushReport::residuals);

  py::class_<HamiltonianModel>(m, "HamiltonianModel")
      .def_property_readonly("dim", &HamiltonianModel::dim)
      .def("potential", py::overload_cast<const Vector&>(&HamiltonianModel::potential, py::const_), py::arg("q"))
      .def("grad_potential", &HamiltonianModel::grad_potential, py::arg("q"))
      .def("hamiltonian", &HamiltonianModel::hamiltonian, py::arg("state"));

  py::class_<QuadraticModel, HamiltonianModel>(m, "QuadraticModel")
      .def(py::init([](const Matrix& stiffness, std::optional<Matrix> mass) {
             const auto n = static_cast<std::size_t>(stiffness.rows());
             return QuadraticModel(mass ? MassStructure::dense(*mass) : MassStructure::identity(n), stiffness);
           }),
           py::arg("stiffness"), py::arg("mass") = py::none())
      .def_static("harmonic", &QuadraticModel::harmonic)
      .def_property_readonly("stiffness", &QuadraticModel::stiffness);

  py::class_<QuarticOscillator, HamiltonianModel>(m, "QuarticOscillator").def(py::init<>());

  py::class_<FPUChain, HamiltonianModel>(m, "FPUChain")
      .def(py::init([](std::size_t d, double alpha, double beta, double omega2, bool periodic) {
             return FPUChain(FPUParams{d, omega2, alpha, beta, periodic});
           }),
           py::arg("d") = 9, py::arg("alpha") = 0.0, py::arg("beta") = 1.0, py::arg("omega2") = 0.0,
           py::arg("periodic") = false);

  m.def("fpu_initial_state", &fpu_initial_state, py::arg("chain"), py::arg("energy"), py::arg("mode") = 1);

  m.def("required_words", [](int order) {
    std::vector<std::string> names;
    for (const auto& w : required_words(order)) names.push_back(w.name());
    return names;
  });
  m.def(
      "word_value",
      [](const HamiltonianModel& model, const std::string& w, const Vector& q, const Vector& p) {
        return model.word_value(word(w), q, p);
      },
      py::arg("model"), py::arg("word"), py::arg("q"), py::arg("p"));
  m.def(
      "word_grad_q",
      [](const HamiltonianModel& model, const std::string& w, const Vector& q, const Vector& p) {
        return model.word_grad_q(word(w), q, p);
      },
      py::arg("model"), py::arg("word"), py::arg("q"), py::arg("p"));
  m.def(
      "word_value_generic",
      [](const HamiltonianModel& model, const std::string& w, const Vector& q, const Vector& p) {
        return word_value_generic(model, word(w), q, p);
      },
      py::arg("model"), py::arg("word"), py::arg("q"), py::arg("p"));

  m.def("effective_grad_V", &effective_grad_V, py::arg("model"), py::arg("q"), py::arg("tau"), py::arg("order"));
  m.def("delta_G_grad_q", &delta_G_grad_q, py::arg("model"), py::arg("q"), py::arg("P"), py::arg("tau"),
        py::arg("order"));
  m.def(
      "solve_push",
      [](const HamiltonianModel& model, const Vector& q, const Vector& p, const SchemeConfig& c) {
        auto r = solve_push(model, q, p, c);
        return py::make_tuple(r.P, r.report);
      },
      py::arg("model"), py::arg("q"), py::arg("p"), py::arg("config"));
  m.def(
      "step",
      [](const PhaseState& s, const HamiltonianModel& model, const SchemeConfig& c) {
        auto r = step(s, model, c);
        return py::make_tuple(r.state, r.report);
      },
      py::arg("state"), py::arg("model"), py::arg("config"));
  m.def(
      "integrate",
      [](const PhaseState& s, const HamiltonianModel& model, const SchemeConfig& c, long n_steps) {
        py::gil_scoped_release release;
        return integrate(s, model, c, n_steps);
      },
      py::arg("state"), py::arg("model"), py::arg("config"), py::arg("n_steps"));

  m.def("modified_coeffs_1d", [](double tau) {
    const auto c = modified_coeffs_1d(tau);
    return py::make_tuple(c.m, c.k);
  });
  m.def(
      "modified_matrices",
      [](const Matrix& mass, const Matrix& k, double tau, int order) {
        auto r = modified_matrices(mass, k, tau, order);
        return py::make_tuple(r.m_tau, r.k_tau);
      },
      py::arg("M"), py::arg("K"), py::arg("tau"), py::arg("order"));
  m.def("linear_step", &linear_step, py::arg("state"), py::arg("M_tau"), py::arg("K_tau"), py::arg("tau"));

  py::class_<RunRecord>(m, "RunRecord")
      .def_property_readonly("times", [](const RunRecord& r) { return r.times; })
      .def_property_readonly("energies", [](const RunRecord& r) { return r.energies; })
      .def_property_readonly("push_iterations", [](const RunRecord& r) { return r.push_iterations; })
      .def_property_readonly("q", [](const RunRecord& r) { return stack_rows(r, false); })
      .def_property_readonly("p", [](const RunRecord& r) { return stack_rows(r, true); })
      .def_readonly("is_reference", &RunRecord::is_reference)
      .def("__len__", &RunRecord::size);

  m.def(
      "record_run",
      [](const HamiltonianModel& model, const PhaseState& s0, const SchemeConfig& c, long n_steps, long stride,
         const std::string& precision) {
        const Precision prec = precision_from(precision);
        py::gil_scoped_release release;
        return record_run(model, s0, c, n_steps, stride, prec);
      },
      py::arg("model"), py::arg("state0"), py::arg("config"), py::arg("n_steps"), py::arg("stride") = 1,
      py::arg("precision") = "standard");
  m.def(
      "reference_trajectory",
      [](const HamiltonianModel& model, const PhaseState& s0, double t_end, double sample_dt, double tau_ref,
         const std::string& precision) {
        const ReferenceSettings settings{tau_ref, 8, precision_from(precision)};
        py::gil_scoped_release release;
        return reference_trajectory(model, s0, t_end, sample_dt, settings);
      },
      py::arg("model"), py::arg("state0"), py::arg("t_end"), py::arg("sample_dt"), py::arg("tau_ref") = 5e-4,
      py::arg("precision") = "standard");
  m.def("global_error", &global_error, py::arg("record"), py::arg("reference"));
  m.def("period_estimate", &period_estimate, py::arg("record"));
  m.def("convergence_order", &convergence_order, py::arg("errors_by_tau"));
  m.def("optimal_order", &optimal_order, py::arg("digits"), py::arg("t"));
}
