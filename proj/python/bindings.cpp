#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "d1q2/consistency.hpp"
#include "d1q2/spectral.hpp"

namespace py = pybind11;
using namespace d1q2;

namespace {

py::array_t<double> to_array(const Trajectory& t) {
    const py::ssize_t rows = static_cast<py::ssize_t>(t.size());
    const py::ssize_t cols = rows ? static_cast<py::ssize_t>(t[0].size()) : 0;
    py::array_t<double> a({rows, cols});
    auto m = a.mutable_unchecked<2>();
    for (py::ssize_t n = 0; n < rows; ++n)
        for (py::ssize_t j = 0; j < cols; ++j) m(n, j) = t[n][j];
    return a;
}

InitialData as_data(const py::object& d) {
    if (py::isinstance<InitialData>(d)) return d.cast<InitialData>();
    if (PyCallable_Check(d.ptr())) return InitialData::pointwise(d.cast<std::function<double(double)>>());
    return InitialData::samples(d.cast<Vec>());
}

BoundarySpec make_spec(const OutflowCondition& outflow, SourceMode source,
                       std::optional<std::function<double(double)>> inflow) {
    BoundarySpec s;
    s.outflow = outflow;
    s.source = source;
    if (inflow) s.inflow = *inflow;
    return s;
}

}  // namespace

PYBIND11_MODULE(_d1q2, m) {
    m.doc() = "D1Q2 lattice Boltzmann scheme with outflow boundary analysis";

    py::class_<SchemeParams>(m, "SchemeParams")
        .def(py::init([](double omega, double lambda_, int num_points, double length) {
                 SchemeParams p{omega, lambda_, num_points, length};
                 p.validate();
                 return p;
             }),
             py::arg("omega") = 2.0, py::arg("lambda_") = 1.0, py::arg("num_points") = 50,
             py::arg("length") = 1.0)
        .def_readwrite("omega", &SchemeParams::omega)
        .def_readwrite("lambda_", &SchemeParams::lambda)
        .def_readwrite("num_points", &SchemeParams::num_points)
        .def_readwrite("length", &SchemeParams::length)
        .def_property_readonly("dx", &SchemeParams::dx)
        .def_property_readonly("dt", &SchemeParams::dt);

    py::class_<Flux>(m, "Flux")
        .def_static("linear", &Flux::linear, py::arg("velocity"))
        .def_static("burgers", &Flux::burgers)
        .def_property_readonly("is_linear", &Flux::is_linear)
        .def_property_readonly("velocity", &Flux::velocity)
        .def("__call__", &Flux::operator())
        .def("__repr__", &Flux::describe);

    py::class_<InitialData>(m, "InitialData")
        .def_static("impulse", &InitialData::impulse, py::arg("index"), py::arg("amplitude") = 1.0)
        .def_static("samples", &InitialData::samples)
        .def_static("pointwise", &InitialData::pointwise);

    py::class_<OutflowCondition>(m, "OutflowCondition")
        .def_static("extrapolation", &OutflowCondition::extrapolation, py::arg("sigma"))
        .def_static("kinetic", &OutflowCondition::kinetic)
        .def_property_readonly("is_kinetic", &OutflowCondition::is_kinetic)
        .def_readonly("sigma", &OutflowCondition::sigma)
        .def("__repr__", &OutflowCondition::describe);

    py::enum_<SourceMode>(m, "SourceMode").value("Off", SourceMode::Off).value("Correct", SourceMode::Correct);

    m.def("equilibrium", &equilibrium, py::arg("u"), py::arg("params"), py::arg("flux"));

    m.def(
        "run",
        [](const SchemeParams& p, const Flux& f, const py::object& data, const OutflowCondition& outflow,
           SourceMode source, std::optional<std::function<double(double)>> inflow, int steps) {
            return to_array(run(p, f, as_data(data), make_spec(outflow, source, inflow), steps));
        },
        py::arg("params"), py::arg("flux"), py::arg("data"), py::arg("outflow") = OutflowCondition::extrapolation(1),
        py::arg("source") = SourceMode::Off, py::arg("inflow") = py::none(), py::arg("steps") = 0,
        "Conserved moment u_j^n, shape (steps + 1, J).");

    m.def(
        "boundary_series",
        [](const SchemeParams& p, const Flux& f, const py::object& data, const OutflowCondition& outflow, int steps) {
            return run_boundary_series(p, f, as_data(data), make_spec(outflow, SourceMode::Off, std::nullopt), steps)
                .abs_u0;
        },
        py::arg("params"), py::arg("flux"), py::arg("data"), py::arg("outflow"), py::arg("steps"));

    m.def(
        "check_equivalence",
        [](const SchemeParams& p, const Flux& f, const py::object& data, const OutflowCondition& outflow,
           SourceMode source, int steps) {
            return check_equivalence(p, f, as_data(data), make_spec(outflow, source, std::nullopt), steps);
        },
        py::arg("params"), py::arg("flux"), py::arg("data"), py::arg("outflow"), py::arg("source") = SourceMode::Off,
        py::arg("steps") = 25);

    m.def("solve_gamma", [](int sigma) { return solve_gamma(sigma).values; }, py::arg("sigma"));

    m.def(
        "eventual_stencil",
        [](const SchemeParams& p, const Flux& f, const OutflowCondition& outflow) {
            BoundaryStencil b = build_stencils(p, f, outflow).eventual();
            return py::make_tuple(b.alpha, b.beta);
        },
        py::arg("params"), py::arg("flux"), py::arg("outflow"), "(alpha, beta) of the eventual outflow scheme.");

    m.def(
        "effective_advection",
        [](const SchemeParams& p, double V, const OutflowCondition& outflow) {
            auto st = build_stencils(p, Flux::linear(V), outflow);
            return modified_equation(st.outflow_generic, p.lambda, V).effective_advection;
        },
        py::arg("params"), py::arg("velocity"), py::arg("outflow"));

    m.def(
        "convergence",
        [](const Flux& f, double omega, const OutflowCondition& outflow, SourceMode source, const std::string& datum,
           double final_time, std::vector<int> intervals) {
            ConvergenceConfig c;
            c.flux = f;
            c.omega = omega;
            c.outflow = outflow;
            c.source = source;
            c.final_time = final_time;
            c.datum = datum == "tanh" ? Datum::Tanh : Datum::Sin;
            py::list rows;
            for (const auto& r : convergence_study(c, intervals.empty() ? table_intervals() : intervals))
                rows.append(py::dict(py::arg("dx") = r.dx, py::arg("l2_error") = r.l2_error,
                                     py::arg("order") = r.observed_order, py::arg("unstable") = r.unstable));
            return rows;
        },
        py::arg("flux"), py::arg("omega"), py::arg("outflow"), py::arg("source") = SourceMode::Off,
        py::arg("datum") = "sin", py::arg("final_time") = 1.0, py::arg("intervals") = std::vector<int>{});

    m.def("pi_value", &pi_value, py::arg("omega"), py::arg("C"));
    m.def(
        "char_roots",
        [](cplx z, double omega, double C) {
            auto r = char_roots(z, omega, C);
            return py::make_tuple(r.kappa_minus, r.kappa_plus, r.ambiguous);
        },
        py::arg("z"), py::arg("omega"), py::arg("C"), "(kappa_minus, kappa_plus, ambiguous)");
    m.def(
        "gks_verdict",
        [](const OutflowCondition& outflow, double omega, double C) {
            auto v = gks_verdict(outflow, omega, C);
            std::vector<std::pair<cplx, cplx>> modes;
            for (const auto& r : v.unstable_modes) modes.emplace_back(r.z, r.kappa);
            return py::dict(py::arg("stable") = v.status == GksStatus::Stable, py::arg("modes") = modes,
                            py::arg("notes") = v.notes);
        },
        py::arg("outflow"), py::arg("omega"), py::arg("C"));

    py::enum_<MatrixKind>(m, "MatrixKind")
        .value("LbmBlock", MatrixKind::LbmBlock)
        .value("FdCompanion", MatrixKind::FdCompanion)
        .value("ToeplitzCompanion", MatrixKind::ToeplitzCompanion)
        .value("CirculantCompanion", MatrixKind::CirculantCompanion);

    m.def(
        "scheme_matrix",
        [](MatrixKind k, const SchemeParams& p, double C, const OutflowCondition& outflow) {
            return build_matrix(k, p, Flux::linear(C * p.lambda), outflow).E;
        },
        py::arg("kind"), py::arg("params"), py::arg("C"), py::arg("outflow"));
    m.def(
        "eigenvalues",
        [](MatrixKind k, const SchemeParams& p, double C, const OutflowCondition& outflow) {
            return spectrum(build_matrix(k, p, Flux::linear(C * p.lambda), outflow)).eigenvalues;
        },
        py::arg("kind"), py::arg("params"), py::arg("C"), py::arg("outflow"));
    m.def(
        "deviation",
        [](const SchemeParams& p, double C, const OutflowCondition& outflow, cplx target) {
            auto d = deviation_newton(build_matrix(MatrixKind::FdCompanion, p, Flux::linear(C * p.lambda), outflow),
                                      target);
            return py::make_tuple(d.epsilon_newton, d.epsilon_min_eig);
        },
        py::arg("params"), py::arg("C"), py::arg("outflow"), py::arg("target"), "(epsilon_newton, epsilon_min_eig)");
    m.def("deviation_closed_form", &deviation_closed_form, py::arg("target"), py::arg("C"), py::arg("J"));
}
