#include "d1q2/consistency.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>

namespace d1q2 {

ModifiedEquation modified_equation(const Stencil& s, double lambda, double V) {
    double zeroth = -1.0, space = 0.0, time = s.advance;
    for (const auto& t : s.terms) {
        zeroth += t.weight;
        space += t.weight * (t.offset - s.target);
        time += t.weight * t.lag;
    }
    ModifiedEquation m;
    m.consistency_defect = zeroth;
    m.is_consistent = std::abs(zeroth) <= 1e-12;
    m.effective_advection = -lambda * space / time;
    m.is_consistent_with_target = m.is_consistent && std::abs(m.effective_advection - V) <= 1e-12;
    return m;
}

std::function<double(double)> datum_function(Datum d) {
    if (d == Datum::Sin) return [](double x) { return std::sin(x); };
    return [](double x) {
        double y = 2.0 * x;
        if (std::abs(y) < 1.0) return 0.5 + 0.5 * std::tanh(y / (1.0 - y * y));
        return 0.5 + 0.5 * (y > 0 ? 1.0 : (y < 0 ? -1.0 : 0.0));
    };
}

std::string datum_name(Datum d) { return d == Datum::Sin ? "sin" : "tanh"; }

double exact_advection_solution(const std::function<double(double)>& datum,
                                const std::function<double(double)>& g, double V, double t,
                                double x, double L) {
    double xi = x - V * t;
    if (xi <= L || V >= 0.0) return datum(xi);
    return g(t - (L - x) / std::abs(V));
}

double burgers_exact_solution(const std::function<double(double)>& datum, double t, double x) {
    if (t == 0.0) return datum(x);
    auto F = [&](double xi) { return xi - datum(xi) * t - x; };
    double lo = x - 1e-12, hi = x + t + 1e-12;
    for (int it = 0; it < 200 && hi - lo > 1e-16 * (1.0 + std::abs(x)); ++it) {
        double mid = 0.5 * (lo + hi);
        (F(mid) > 0.0 ? hi : lo) = mid;
    }
    return datum(0.5 * (lo + hi));
}

std::vector<int> table_intervals() { return {49, 79, 127, 203, 325, 520, 832, 1331, 2130, 3408}; }

double l2_norm(const Vec& e, double dx) {
    double s = 0.0;
    for (double v : e) s += v * v;
    return std::sqrt(dx * s);
}

ConvergenceRow convergence_row(const ConvergenceConfig& cfg, int intervals) {
    SchemeParams p{cfg.omega, cfg.lambda, intervals + 1, cfg.length};
    auto u0 = datum_function(cfg.datum);
    const bool linear = cfg.flux.is_linear();
    const double V = cfg.flux.velocity(), L = cfg.length;
    std::function<double(double)> g;
    if (linear)
        g = [u0, V, L](double t) { return u0(L - V * t); };
    else
        g = [u0, L](double t) { return burgers_exact_solution(u0, t, L); };
    BoundarySpec spec;
    spec.inflow = g;
    spec.outflow = cfg.outflow;
    spec.source = cfg.source;

    ConvergenceRow row;
    row.intervals = intervals;
    row.dx = p.dx();
    row.steps = static_cast<int>(std::floor(cfg.final_time / p.dt() + 1e-9));
    row.time = row.steps * p.dt();

    LbmSolver solver(p, cfg.flux, InitialData::pointwise(u0), spec);
    for (int n = 0; n < row.steps; ++n) solver.step();
    Vec u = solver.u();
    Vec x = grid(p);
    Vec e(u.size());
    for (std::size_t j = 0; j < u.size(); ++j) {
        if (!std::isfinite(u[j]) || std::abs(u[j]) > 1e10) row.unstable = true;
        double ex = linear ? exact_advection_solution(u0, g, V, row.time, x[j], L)
                           : burgers_exact_solution(u0, row.time, x[j]);
        e[j] = u[j] - ex;
    }
    row.l2_error = l2_norm(e, p.dx());
    row.observed_order = std::numeric_limits<double>::quiet_NaN();
    return row;
}

std::vector<ConvergenceRow> convergence_study(const ConvergenceConfig& cfg,
                                              const std::vector<int>& intervals) {
    for (std::size_t i = 1; i < intervals.size(); ++i)
        if (intervals[i] <= intervals[i - 1])
            throw std::invalid_argument("dx sequence must be strictly decreasing");
    std::vector<std::future<ConvergenceRow>> jobs;
    for (int n : intervals)
        jobs.push_back(std::async(std::launch::async, [&cfg, n] { return convergence_row(cfg, n); }));
    std::vector<ConvergenceRow> rows;
    for (auto& j : jobs) rows.push_back(j.get());
    for (std::size_t i = 1; i < rows.size(); ++i)
        rows[i].observed_order = std::log(rows[i - 1].l2_error / rows[i].l2_error) /
                                 std::log(rows[i - 1].dx / rows[i].dx);
    return rows;
}

GrowthFit fit_growth(const Vec& abs_u0, int n_lo, int n_hi) {
    Vec xs, ys;
    for (int n = std::max(1, n_lo); n <= n_hi && n < static_cast<int>(abs_u0.size()); ++n) {
        double a = abs_u0[n];
        if (!(a > 0.0) || !std::isfinite(a)) continue;
        xs.push_back(std::log(double(n)));
        ys.push_back(std::log(a));
    }
    const int m = static_cast<int>(xs.size());
    if (m < 2) throw std::invalid_argument("growth fit needs at least two nonzero samples");
    double mx = 0.0, my = 0.0;
    for (int i = 0; i < m; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= m;
    my /= m;
    double sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < m; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    GrowthFit f;
    f.exponent = sxy / sxx;
    f.samples = m;
    double r = 0.0;
    for (int i = 0; i < m; ++i) {
        double e = ys[i] - my - f.exponent * (xs[i] - mx);
        r += e * e;
    }
    f.residual = std::sqrt(r / m);
    return f;
}

std::pair<int, int> pre_reflection_window(int J, double C) {
    return {10, static_cast<int>(std::floor(2.0 * (J - 1) / std::abs(C)))};
}

std::pair<int, int> long_time_window(int J, double C) {
    return {static_cast<int>(std::ceil(5.0 * (J - 1) / std::abs(C))),
            static_cast<int>(std::floor(50.0 * (J - 1) / std::abs(C)))};
}

}  // namespace d1q2
