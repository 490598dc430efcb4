#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "shgordon/concentration.hpp"
#include "shgordon/expansions.hpp"
#include "shgordon/harness.hpp"
#include "shgordon/mesh.hpp"
#include "shgordon/solver.hpp"

namespace py = pybind11;
using namespace shgordon;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Radial boundary-layer laboratory for a nonlocal sinh-Gordon problem";

    py::class_<ProblemParams>(m, "ProblemParams")
        .def(py::init([](double N, double R, double gamma, double a0, double eps) {
                 ProblemParams pp{N, R, gamma, a0, eps};
                 pp.validate();
                 return pp;
             }),
             py::arg("N") = 2.0, py::arg("R") = 1.0, py::arg("gamma") = 1.0, py::arg("a0") = 1.0,
             py::arg("eps") = 0.01)
        .def_readwrite("N", &ProblemParams::dim)
        .def_readwrite("R", &ProblemParams::radius)
        .def_readwrite("gamma", &ProblemParams::gamma)
        .def_readwrite("a0", &ProblemParams::a0)
        .def_readwrite("eps", &ProblemParams::eps)
        .def("__repr__", [](const ProblemParams& pp) {
            return "ProblemParams(N=" + std::to_string(pp.dim) + ", R=" + std::to_string(pp.radius) +
                   ", gamma=" + std::to_string(pp.gamma) + ", a0=" + std::to_string(pp.a0) +
                   ", eps=" + std::to_string(pp.eps) + ")";
        });

    py::class_<LayerPoint>(m, "LayerPoint")
        .def(py::init([](double p, double q) {
                 LayerPoint pt{p, q};
                 pt.validate();
                 return pt;
             }),
             py::arg("p") = 0.0, py::arg("q") = 0.0)
        .def_readwrite("p", &LayerPoint::p)
        .def_readwrite("q", &LayerPoint::q)
        .def("radius_at", &LayerPoint::radius_at);

    py::class_<TwoTerm>(m, "TwoTerm")
        .def_readonly("leading", &TwoTerm::leading)
        .def_readonly("correction", &TwoTerm::correction)
        .def_readonly("lead_order", &TwoTerm::lead_order)
        .def("at", &TwoTerm::at)
        .def("leading_at", &TwoTerm::leading_at)
        .def("correction_at", &TwoTerm::correction_at);

    py::class_<BoundaryExpansion>(m, "BoundaryExpansion")
        .def_readonly("b", &BoundaryExpansion::b)
        .def_readonly("c", &BoundaryExpansion::c)
        .def_readonly("u_R", &BoundaryExpansion::u_R)
        .def_readonly("du_R", &BoundaryExpansion::du_R);

    py::class_<LayerExpansion>(m, "LayerExpansion")
        .def_readonly("k", &LayerExpansion::k)
        .def_readonly("H", &LayerExpansion::H)
        .def_readonly("u", &LayerExpansion::u)
        .def_readonly("du", &LayerExpansion::du);

    py::class_<LocalExpansion>(m, "LocalExpansion")
        .def_readonly("b", &LocalExpansion::b)
        .def_readonly("v_R", &LocalExpansion::v_R)
        .def_readonly("dv_R", &LocalExpansion::dv_R)
        .def_readonly("k", &LocalExpansion::k)
        .def_readonly("H", &LocalExpansion::H)
        .def_readonly("v", &LocalExpansion::v)
        .def_readonly("dv", &LocalExpansion::dv);

    py::class_<ComparisonLimits>(m, "ComparisonLimits")
        .def_readonly("boundary_value_gap", &ComparisonLimits::boundary_value_gap)
        .def_readonly("boundary_slope_gap", &ComparisonLimits::boundary_slope_gap)
        .def_readonly("layer_value_gap", &ComparisonLimits::layer_value_gap)
        .def_readonly("layer_slope_gap", &ComparisonLimits::layer_slope_gap);

    m.def("solve_b", &solve_b, py::arg("params"));
    m.def("expand_boundary", &expand_boundary, py::arg("params"));
    m.def("dtn_two_term", &dtn_two_term, py::arg("params"), py::arg("u_R"));
    m.def("solve_k_of_p", &solve_k_of_p, py::arg("params"), py::arg("b"), py::arg("p"));
    m.def("layer_expansion", &layer_expansion, py::arg("params"), py::arg("point"));
    m.def("local_model_expansions", &local_model_expansions, py::arg("params"), py::arg("point"));
    m.def("comparison_limits", &comparison_limits, py::arg("params"), py::arg("point"));
    m.def("half_height_q", &half_height_q, py::arg("params"));
    m.def("decay_envelope", &decay_envelope, py::arg("params"), py::arg("r"));

    py::enum_<Grading>(m, "Grading")
        .value("uniform", Grading::uniform)
        .value("geometric", Grading::geometric);

    py::class_<Mesh>(m, "Mesh")
        .def_readonly("nodes", &Mesh::nodes)
        .def("__len__", &Mesh::size);

    m.def(
        "build_mesh",
        [](const ProblemParams& pp, std::size_t n, Grading kind) {
            GradingSpec spec;
            spec.kind = kind;
            return build_mesh(pp, n, spec);
        },
        py::arg("params"), py::arg("n") = 800, py::arg("grading") = Grading::geometric);

    py::enum_<ModelKind>(m, "ModelKind")
        .value("coupled", ModelKind::nonlocal)  // "nonlocal" is a python keyword
        .value("local", ModelKind::local);

    py::class_<RadialSolution>(m, "RadialSolution")
        .def_readonly("params", &RadialSolution::params)
        .def_readonly("mesh", &RadialSolution::mesh)
        .def_readonly("model", &RadialSolution::model)
        .def_readonly("u", &RadialSolution::u)
        .def_readonly("du", &RadialSolution::du)
        .def_readonly("c", &RadialSolution::c)
        .def_readonly("newton_iterations", &RadialSolution::newton_iterations)
        .def_readonly("residual_norm", &RadialSolution::residual_norm)
        .def_readonly("converged", &RadialSolution::converged)
        .def_property_readonly("r", [](const RadialSolution& s) { return s.mesh.nodes; });

    m.def(
        "solve",
        [](const ProblemParams& pp, std::size_t n, Grading kind, ModelKind model) {
            GradingSpec spec;
            spec.kind = kind;
            Mesh mesh = build_mesh(pp, n, spec);
            return model == ModelKind::local ? solve_local(pp, mesh) : solve_nonlocal(pp, mesh);
        },
        py::arg("params"), py::arg("n") = 800, py::arg("grading") = Grading::geometric,
        py::arg("model") = ModelKind::nonlocal);

    m.def("energy", &energy, py::arg("params"), py::arg("mesh"), py::arg("u"));

    py::class_<FluxConstancy>(m, "FluxConstancy")
        .def_readonly("mean", &FluxConstancy::mean)
        .def_readonly("max_deviation", &FluxConstancy::max_deviation)
        .def_readonly("t", &FluxConstancy::t)
        .def_readonly("phi", &FluxConstancy::phi);
    m.def("integro_identity_check", &integro_identity_check, py::arg("solution"));

    py::class_<HolderFunction>(m, "HolderFunction")
        .def(py::init([](std::string name, std::function<double(double)> f, double tau) {
                 return HolderFunction{std::move(name), std::move(f), tau};
             }),
             py::arg("name"), py::arg("f"), py::arg("tau") = 1.0)
        .def_readonly("name", &HolderFunction::name)
        .def_readonly("tau", &HolderFunction::tau)
        .def("__call__", &HolderFunction::operator());

    m.def("weight_Ii", &weight_Ii, py::arg("F"), py::arg("b"), py::arg("abs_tol") = 1e-10);
    m.def("weight_Iii", &weight_Iii, py::arg("F"), py::arg("b"), py::arg("abs_tol") = 1e-10);
    m.def("weight_II", &weight_II, py::arg("F"), py::arg("b"), py::arg("kp"),
          py::arg("gradient_flavor"), py::arg("abs_tol") = 1e-10);

    py::enum_<PairingMode>(m, "PairingMode")
        .value("gradient", PairingMode::gradient)
        .value("value", PairingMode::value);

    py::class_<PairingResult>(m, "PairingResult")
        .def_readonly("value", &PairingResult::value)
        .def_readonly("resolution_warning", &PairingResult::resolution_warning);

    m.def(
        "empirical_pairing",
        [](const RadialSolution& sol, const HolderFunction& F, std::function<double(double)> h,
           PairingMode mode, std::optional<double> window_p) {
            return empirical_pairing(sol, F, h, mode, window_p);
        },
        py::arg("solution"), py::arg("F"), py::arg("h"), py::arg("mode") = PairingMode::gradient,
        py::arg("window_p") = std::nullopt);

    py::class_<InterpolatedValue>(m, "InterpolatedValue")
        .def_readonly("r", &InterpolatedValue::r)
        .def_readonly("u", &InterpolatedValue::u)
        .def_readonly("du", &InterpolatedValue::du)
        .def_readonly("u_error", &InterpolatedValue::u_error)
        .def_readonly("du_error", &InterpolatedValue::du_error);

    m.def("interpolate_at_radius", &interpolate_at_radius, py::arg("solution"), py::arg("r"));
    m.def("find_half_height_radius", &find_half_height_radius, py::arg("solution"), py::arg("b"));

    py::register_exception<SolverFailure>(m, "SolverFailure", PyExc_RuntimeError);
}
