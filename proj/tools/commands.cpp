#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <future>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "d1q2/consistency.hpp"
#include "output.hpp"

namespace d1q2::cli {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> header(const Scenario& s, const std::string& cmd,
                                std::vector<std::string> extra = {}) {
    std::vector<std::string> h = {"command=" + cmd, "scenario: " + s.serialize()};
    h.insert(h.end(), extra.begin(), extra.end());
    return h;
}

fs::path out_file(const Scenario& s, const std::string& name) { return fs::path(s.out) / name; }

void require_linear(const Scenario& s, const char* cmd) {
    if (s.flux != "linear") throw std::invalid_argument(std::string(cmd) + " needs a linear flux");
}

std::string cplx_str(cplx z) { return num(z.real()) + "," + num(z.imag()); }

std::vector<SvgPoint> to_points(const std::vector<cplx>& zs) {
    std::vector<SvgPoint> p;
    for (cplx z : zs) p.push_back({z.real(), z.imag()});
    return p;
}

std::string status_name(GksStatus s) { return s == GksStatus::Stable ? "stable" : "unstable"; }

const char* level_color(double sigma) {
    static const char* shades[] = {"#08306b", "#08519c", "#2171b5", "#4292c6", "#6baed6",
                                   "#9ecae1", "#c6dbef", "#deebf7", "#ffffff"};
    int k = static_cast<int>(std::floor(-std::log10(std::max(sigma, 1e-300))));
    k = std::clamp(8 - k, 0, 8);
    return shades[k];
}

}  // namespace

MatrixKind parse_matrix_kind(const std::string& s) {
    if (s == "lbm") return MatrixKind::LbmBlock;
    if (s == "fd") return MatrixKind::FdCompanion;
    if (s == "toeplitz") return MatrixKind::ToeplitzCompanion;
    if (s == "circulant") return MatrixKind::CirculantCompanion;
    throw std::invalid_argument("unknown matrix '" + s + "' (lbm, fd, toeplitz, circulant)");
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    if (text.find(':') != std::string::npos) {
        std::vector<int> parts;
        std::stringstream ss(text);
        std::string p;
        while (std::getline(ss, p, ':')) parts.push_back(std::stoi(p));
        if (parts.size() < 2 || parts.size() > 3) throw std::invalid_argument("range is lo:hi[:step]");
        int step = parts.size() == 3 ? parts[2] : 1;
        if (step <= 0) throw std::invalid_argument("range step must be positive");
        for (int v = parts[0]; v <= parts[1]; v += step) out.push_back(v);
    } else {
        std::stringstream ss(text);
        std::string p;
        while (std::getline(ss, p, ',')) out.push_back(std::stoi(p));
    }
    if (out.empty()) throw std::invalid_argument("empty list '" + text + "'");
    return out;
}

std::complex<double> parse_complex(const std::string& s) {
    auto c = s.find(',');
    if (c == std::string::npos) return {std::stod(s), 0.0};
    return {std::stod(s.substr(0, c)), std::stod(s.substr(c + 1))};
}

int cmd_simulate(const Scenario& s, const SimulateOptions& o) {
    s.validate();
    const SchemeParams p = s.params();
    const int N = o.steps >= 0 ? o.steps : s.steps();
    LbmSolver solver(p, s.make_flux(), s.make_data(), s.spec());
    const Vec x = grid(p);
    CsvWriter traj(out_file(s, "trajectory.csv"), header(s, "simulate", {"steps=" + std::to_string(N)}),
                   {"n", "t", "j", "x", "u"});
    CsvWriter series(out_file(s, "boundary_series.csv"), header(s, "simulate"), {"n", "t", "abs_u0"});
    std::vector<SvgPoint> pts;
    auto snapshot = [&](int n, const Vec& u) {
        for (int j = 0; j < p.num_points; ++j) traj.row({num(n), num(n * p.dt()), num(j), num(x[j]), num(u[j])});
    };
    Vec u = solver.u();
    snapshot(0, u);
    series.row({0.0, 0.0, std::abs(u[0])});
    for (int n = 1; n <= N; ++n) {
        solver.step();
        u = solver.u();
        series.row({double(n), n * p.dt(), std::abs(u[0])});
        if (n > 0 && std::abs(u[0]) > 0) pts.push_back({double(n), std::abs(u[0])});
        if (n == N || (o.snapshot_every > 0 && n % o.snapshot_every == 0)) snapshot(n, u);
    }
    if (o.svg)
        write_svg(out_file(s, "boundary_series.svg"), "|u_0^n| vs n", {{pts, "black", true}}, {}, false, true);
    std::cout << "steps " << N << "  final |u_0| " << num(std::abs(u[0])) << "\n";
    return 0;
}

int cmd_growth(const Scenario& s, const GrowthOptions& o) {
    s.validate();
    require_linear(s, "growth");
    auto w = o.regime == "long" ? long_time_window(s.points, s.courant)
             : o.regime == "pre" ? pre_reflection_window(s.points, s.courant)
                                 : throw std::invalid_argument("regime is pre or long");
    if (o.lo >= 0) w.first = o.lo;
    if (o.hi >= 0) w.second = o.hi;
    if (w.second <= w.first) throw std::invalid_argument("empty fit window");
    auto series = run_boundary_series(s.params(), s.make_flux(), s.make_data(), s.spec(), w.second).abs_u0;
    GrowthFit fit = fit_growth(series, w.first, w.second);
    CsvWriter csv(out_file(s, "growth.csv"),
                  header(s, "growth", {"window=" + std::to_string(w.first) + ":" + std::to_string(w.second),
                                       "exponent=" + num(fit.exponent), "fit_residual=" + num(fit.residual),
                                       "samples=" + std::to_string(fit.samples)}),
                  {"n", "abs_u0"});
    for (std::size_t n = 0; n < series.size(); ++n) csv.row({double(n), series[n]});
    std::cout << "exponent " << num(fit.exponent) << "  residual " << num(fit.residual) << "  window ["
              << w.first << ", " << w.second << "]\n";
    return 0;
}

int cmd_converge(const Scenario& s, const ConvergeOptions& o) {
    s.validate();
    if (s.datum != "sin" && s.datum != "tanh") throw std::invalid_argument("converge needs datum sin or tanh");
    ConvergenceConfig cfg;
    cfg.flux = s.make_flux();
    cfg.omega = s.omega;
    cfg.lambda = s.lambda;
    cfg.length = s.length;
    cfg.final_time = s.final_time;
    cfg.outflow = s.make_outflow();
    cfg.source = s.make_source();
    cfg.datum = s.datum == "sin" ? Datum::Sin : Datum::Tanh;
    auto rows = convergence_study(cfg, o.intervals.empty() ? table_intervals() : o.intervals);
    CsvWriter csv(out_file(s, "converge.csv"), header(s, "converge", {"points is ignored; intervals per row"}),
                  {"intervals", "dx", "steps", "l2_error", "order", "unstable"});
    std::vector<SvgPoint> pts;
    for (const auto& r : rows) {
        csv.row({num(r.intervals), num(r.dx), num(r.steps), num(r.l2_error),
                 std::isnan(r.observed_order) ? std::string() : num(r.observed_order), r.unstable ? "1" : "0"});
        if (std::isnan(r.observed_order)) std::printf("%10.3e  %10.3e\n", r.dx, r.l2_error);
        else std::printf("%10.3e  %10.3e  %5.2f\n", r.dx, r.l2_error, r.observed_order);
        pts.push_back({std::log10(r.dx), r.l2_error});
    }
    if (o.svg) write_svg(out_file(s, "converge.svg"), "L2 error vs log10 dx", {{pts, "black", true}}, {}, false, true);
    return 0;
}

int cmd_equivalence(const Scenario& s, const EquivalenceOptions& o) {
    s.validate();
    double d = check_equivalence(s.params(), s.make_flux(), s.make_data(), s.spec(), o.steps);
    CsvWriter csv(out_file(s, "equivalence.csv"), header(s, "equivalence"), {"steps", "max_abs_deviation"});
    csv.row({double(o.steps), d});
    std::cout << "max |u_LBM - u_FD| over " << o.steps << " steps: " << num(d) << "\n";
    return 0;
}

int cmd_modified_eq(const Scenario& s) {
    s.validate();
    require_linear(s, "modified-eq");
    const double V = s.courant * s.lambda;
    FdStencilSet st = build_stencils(s.params(), s.make_flux(), s.make_outflow());
    std::vector<std::pair<std::string, const Stencil*>> list = {{"bulk_first", &st.bulk_first},
                                                                {"bulk_generic", &st.bulk_generic},
                                                                {"outflow_first", &st.outflow_first},
                                                                {"outflow_generic", &st.outflow_generic}};
    if (st.has_second_step) {
        list.push_back({"outflow_second", &st.outflow_second});
        list.push_back({"outflow_second_node1", &st.outflow_second_next});
    }
    CsvWriter csv(out_file(s, "modified_eq.csv"), header(s, "modified-eq"),
                  {"stencil", "effective_advection", "consistency_defect", "consistent", "consistent_with_target"});
    for (const auto& [name, sp] : list) {
        auto m = modified_equation(*sp, s.lambda, V);
        csv.row({name, num(m.effective_advection), num(m.consistency_defect), m.is_consistent ? "1" : "0",
                 m.is_consistent_with_target ? "1" : "0"});
        std::printf("%-22s a = %-24s defect = %s\n", name.c_str(), num(m.effective_advection).c_str(),
                    num(m.consistency_defect).c_str());
    }
    return 0;
}

int cmd_gks(const Scenario& s, const GksOptions& o) {
    if (o.kinetic_cubic) {
        CsvWriter csv(out_file(s, "kinetic_cubic.csv"), header(s, "gks", {"kinetic cubic roots, omega fixed"}),
                      {"C", "abs_z1", "abs_z2", "abs_z3", "abs_kappa1", "abs_kappa2", "abs_kappa3"});
        for (int i = 0; i < o.samples; ++i) {
            double C = o.samples == 1 ? o.c_min : o.c_min + (o.c_max - o.c_min) * i / (o.samples - 1);
            auto z = kinetic_cubic_roots(s.omega, C);
            std::sort(z.begin(), z.end(), [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
            std::vector<double> row = {C};
            for (cplx r : z) row.push_back(std::abs(r));
            for (cplx r : z) {
                auto k = kinetic_kappa(r, s.omega, C);
                row.push_back(k ? std::abs(*k) : std::numeric_limits<double>::quiet_NaN());
            }
            csv.row(row);
        }
        std::cout << "wrote " << csv.path().string() << "\n";
        return 0;
    }
    auto describe_modes = [](const GksVerdict& v) {
        std::string m;
        for (const auto& r : v.unstable_modes)
            m += (m.empty() ? "" : ";") + num(r.z.real()) + (std::abs(r.z.imag()) > 0 ? "+" + num(r.z.imag()) + "i" : "") +
                 "/" + num(r.kappa.real()) + (std::abs(r.kappa.imag()) > 0 ? "+" + num(r.kappa.imag()) + "i" : "");
        return m;
    };
    auto join = [](const std::vector<std::string>& v) {
        std::string r;
        for (const auto& x : v) r += (r.empty() ? "" : " | ") + x;
        return r;
    };
    CsvWriter csv(out_file(s, "gks.csv"), header(s, "gks"), {"outflow", "omega", "C", "status", "modes_z/kappa", "notes"});
    auto emit = [&](const OutflowCondition& oc, double w, double C) {
        auto v = gks_verdict(oc, w, C);
        csv.row({oc.describe(), num(w), num(C), status_name(v.status), describe_modes(v), join(v.notes)});
        return v;
    };
    if (!o.sweep) {
        require_linear(s, "gks");
        auto v = emit(s.make_outflow(), s.omega, s.courant);
        std::cout << s.make_outflow().describe() << " omega=" << num(s.omega) << " C=" << num(s.courant) << ": "
                  << status_name(v.status);
        if (!v.unstable_modes.empty()) std::cout << " modes " << describe_modes(v);
        for (const auto& n : v.notes) std::cout << " [" << n << "]";
        std::cout << "\n";
        return 0;
    }
    for (int sigma = 1; sigma <= 3; ++sigma)
        for (double w : {0.5, 1.0, 1.5, 1.98, 2.0})
            for (double C : {-0.9, -0.5, -0.25, 0.25, 0.5, 0.9}) {
                auto v = emit(OutflowCondition::extrapolation(sigma), w, C);
                std::printf("sigma=%d omega=%-5g C=%-5g %-8s %s\n", sigma, w, C, status_name(v.status).c_str(),
                            describe_modes(v).c_str());
            }
    return 0;
}

int cmd_spectrum(const Scenario& s, const SpectrumOptions& o) {
    require_linear(s, "spectrum");
    MatrixKind kind = parse_matrix_kind(o.matrix);
    auto m = build_matrix(kind, s.params(), s.make_flux(), s.make_outflow());
    auto rep = spectrum(m);
    auto ps = p_stability_check(m);
    CsvWriter csv(out_file(s, "spectrum.csv"),
                  header(s, "spectrum", {std::string("matrix=") + matrix_kind_name(kind),
                                         "max_modulus=" + num(rep.max_modulus), "verdict=" + status_name(ps.verdict)}),
                  {"re", "im", "modulus"});
    for (cplx z : rep.eigenvalues) csv.row({z.real(), z.imag(), std::abs(z)});
    auto kind_a = kind == MatrixKind::CirculantCompanion ? AsymptoticKind::Circulant : AsymptoticKind::Toeplitz;
    auto curve = asymptotic_spectrum(kind_a, s.omega, s.courant, s.make_outflow(), o.samples);
    auto iso = asymptotic_spectrum(AsymptoticKind::OutflowIsolated, s.omega, s.courant, s.make_outflow());
    CsvWriter acsv(out_file(s, "asymptotic.csv"), header(s, "spectrum"), {"set", "re", "im"});
    for (cplx z : curve.asymptotic_curve) acsv.row({"curve", num(z.real()), num(z.imag())});
    for (cplx z : curve.isolated_points) acsv.row({"bulk_isolated", num(z.real()), num(z.imag())});
    if (kind == MatrixKind::FdCompanion || kind == MatrixKind::LbmBlock)
        for (cplx z : iso.isolated_points) acsv.row({"outflow_isolated", num(z.real()), num(z.imag())});
    if (o.svg)
        write_svg(out_file(s, "spectrum.svg"), std::string("spectrum, ") + matrix_kind_name(kind),
                  {{to_points(curve.asymptotic_curve), "#bbbbbb", false, 1.0},
                   {to_points(rep.eigenvalues), "black", false, 2.0},
                   {to_points(iso.isolated_points), "red", false, 3.0}},
                  {}, true);
    std::cout << "max |z| " << num(rep.max_modulus) << "  " << status_name(ps.verdict)
              << (ps.multiplicity_concern ? "  (coincident unit-modulus eigenvalues)" : "") << "\n";
    return 0;
}

int cmd_pseudospectrum(const Scenario& s, const PseudoOptions& o) {
    require_linear(s, "pseudospectrum");
    MatrixKind kind = parse_matrix_kind(o.matrix);
    auto m = build_matrix(kind, s.params(), s.make_flux(), s.make_outflow());
    auto field = pseudospectrum(m, o.grid);
    const PseudoGrid& g = o.grid;
    CsvWriter csv(out_file(s, "pseudospectrum.csv"),
                  header(s, "pseudospectrum",
                         {std::string("matrix=") + matrix_kind_name(kind),
                          "grid=" + num(g.re_min) + ":" + num(g.re_max) + "x" + num(g.im_min) + ":" + num(g.im_max) +
                              " res=" + std::to_string(g.nx) + "x" + std::to_string(g.ny)}),
                  {"re", "im", "sigma_min"});
    for (const auto& p : field) csv.row({p.z.real(), p.z.imag(), p.sigma_min});
    if (o.svg) {
        std::vector<SvgCell> cells;
        double dx = g.nx > 1 ? (g.re_max - g.re_min) / (g.nx - 1) : 1.0;
        double dy = g.ny > 1 ? (g.im_max - g.im_min) / (g.ny - 1) : 1.0;
        for (const auto& p : field)
            cells.push_back({p.z.real() - dx / 2, p.z.imag() - dy / 2, dx, dy, level_color(p.sigma_min)});
        write_svg(out_file(s, "pseudospectrum.svg"), "log10 sigma_min bands and eigenvalues",
                  {{to_points(spectrum(m).eigenvalues), "red", false, 2.0}}, cells, true);
    }
    double mn = std::numeric_limits<double>::infinity();
    for (const auto& p : field) mn = std::min(mn, p.sigma_min);
    std::cout << field.size() << " nodes, min sigma_min " << num(mn) << "\n";
    return 0;
}

int cmd_deviation(const Scenario& s, const DeviationOptions& o) {
    struct Condition {
        std::string outflow;
        double omega, C;
        cplx target;
    };
    std::vector<Condition> conds;
    if (o.preset) {
        for (const char* oc : {"extrap:1", "extrap:2", "extrap:3", "kinetic"}) {
            conds.push_back({oc, 1.98, -0.5, -1.0});
            conds.push_back({oc, 1.6, 0.5, 1.0});
        }
    } else {
        require_linear(s, "deviation");
        conds.push_back({s.outflow, s.omega, s.courant, o.target});
    }
    std::vector<int> sizes = o.sizes;
    if (sizes.empty())
        for (int J = 10; J <= 100; ++J) sizes.push_back(J);
    CsvWriter csv(out_file(s, "deviation.csv"), header(s, "deviation"),
                  {"outflow", "omega", "C", "target_re", "target_im", "J", "epsilon_newton", "epsilon_min_eig",
                   "rcond", "closed_form", "flag"});
    struct Row {
        std::vector<std::string> cells;
    };
    std::vector<SvgSeries> series;
    const char* colors[] = {"black", "red", "blue", "green", "orange", "purple", "brown", "gray"};
    for (std::size_t ci = 0; ci < conds.size(); ++ci) {
        const auto& c = conds[ci];
        Scenario sc = s;
        sc.outflow = c.outflow;
        sc.omega = c.omega;
        sc.courant = c.C;
        sc.flux = "linear";
        std::vector<std::future<Row>> jobs;
        for (int J : sizes)
            jobs.push_back(std::async(std::launch::async, [sc, c, J] {
                Scenario t = sc;
                t.points = J;
                auto m = build_matrix(MatrixKind::FdCompanion, t.params(), t.make_flux(), t.make_outflow());
                auto d = deviation_newton(m, c.target);
                std::string closed;
                if (c.omega == 2.0 && c.outflow == "extrap:1" && c.target.imag() == 0.0 &&
                    std::abs(std::abs(c.target.real()) - 1.0) == 0.0)
                    closed = num(deviation_closed_form(c.target.real(), c.C, J));
                std::string flag = d.target_is_eigenvalue ? "eigenvalue" : d.trace_vanishes ? "trace_vanishes" : "";
                return Row{{c.outflow, num(c.omega), num(c.C), num(c.target.real()), num(c.target.imag()), num(J),
                            num(d.epsilon_newton), num(d.epsilon_min_eig), num(d.reciprocal_condition), closed, flag}};
            }));
        SvgSeries ser;
        ser.color = colors[ci % 8];
        ser.line = true;
        for (std::size_t k = 0; k < jobs.size(); ++k) {
            Row r = jobs[k].get();
            csv.row(r.cells);
            ser.points.push_back({double(sizes[k]), std::stod(r.cells[6])});
        }
        series.push_back(ser);
    }
    if (o.svg) write_svg(out_file(s, "deviation.svg"), "epsilon (Newton estimate) vs J", series);
    std::cout << "wrote " << csv.path().string() << "\n";
    return 0;
}

int cmd_reflect(const Scenario& s, const ReflectOptions& o) {
    require_linear(s, "reflect");
    BoundaryStencil b = build_stencils(s.params(), s.make_flux(), s.make_outflow()).eventual();
    const double w = s.omega, C = s.courant;
    auto rout = [&](cplx z) { return reflection_out(z, b, w, C).value; };
    auto po = pole_order(rout, o.z0, o.radii);
    CsvWriter csv(out_file(s, "reflect.csv"),
                  header(s, "reflect", {"z0=" + cplx_str(o.z0), "pole_order=" + std::to_string(po.order),
                                        "slope=" + num(po.slope), "fit_residual=" + num(po.residual)}),
                  {"r", "z_re", "z_im", "abs_R_out", "abs_R_in", "pole", "coincident"});
    cplx dir = std::abs(o.z0) > 0 ? o.z0 / std::abs(o.z0) : cplx(1.0);
    for (double r : o.radii) {
        cplx z = o.z0 + r * dir;
        auto ro = reflection_out(z, b, w, C);
        auto ri = reflection_in(z, w, C, s.points);
        csv.row({num(r), num(z.real()), num(z.imag()), num(std::abs(ro.value)),
                 ri ? num(std::abs(*ri)) : std::string(), ro.pole ? "1" : "0", ro.coincident_roots ? "1" : "0"});
    }
    std::cout << "R_out pole order at " << cplx_str(o.z0) << ": " << po.order << " (slope " << num(po.slope) << ")"
              << (po.ambiguous ? " ambiguous" : "") << "\n";
    return 0;
}

}  // namespace d1q2::cli
