#include "d1q2/fd.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace d1q2 {

double Stencil::weight_sum() const {
    double s = 0.0;
    for (const auto& t : terms) s += t.weight;
    return s;
}

BoundaryStencil to_alpha_beta(const Stencil& s) {
    BoundaryStencil b;
    for (const auto& t : s.terms) {
        Vec& dst = t.lag == 0 ? b.alpha : b.beta;
        if (t.lag > 1 || t.offset < 0) throw std::invalid_argument("stencil is not two-level");
        if (static_cast<int>(dst.size()) <= t.offset) dst.resize(t.offset + 1, 0.0);
        dst[t.offset] += t.weight;
    }
    return b;
}

GammaSystem gamma_system(int sigma) {
    if (sigma < 2) throw std::invalid_argument("the gamma system is defined for sigma >= 2");
    const int sb = std::max(1, sigma - 1) + 1;
    Vec cw = extrapolation_weights(sigma);
    auto c = [&](int j) { return j < sigma ? cw[j] : 0.0; };
    GammaSystem sys;
    sys.rows.assign(sb + 1, Vec(sb, 0.0));
    sys.rhs.assign(sb + 1, 0.0);
    auto add = [&](int row, int k, double v) {
        if (k < sb) sys.rows[row][k] += v;
    };
    add(0, 0, c(0));
    add(0, 1, 1.0);
    sys.rhs[0] = c(0) * c(0) + c(1) - 1.0;
    add(1, 0, c(1) - 1.0);
    add(1, 2, 1.0);
    sys.rhs[1] = c(0) * (c(1) + 1.0) + c(2);
    add(2, 0, c(2));
    add(2, 3, 1.0);
    add(2, 1, -1.0);
    sys.rhs[2] = c(0) * c(2) + c(1) - 1.0 + c(3);
    for (int j = 3; j <= sb; ++j) {
        add(j, 0, c(j));
        add(j, j + 1, 1.0);
        add(j, j - 1, -1.0);
        sys.rhs[j] = c(0) * c(j) + c(j + 1) + c(j - 1);
    }
    return sys;
}

GammaCoefficients solve_gamma(int sigma) {
    GammaSystem sys = gamma_system(sigma);
    const int sb = static_cast<int>(sys.rows[0].size());
    Eigen::MatrixXd A(sb, sb);
    Eigen::VectorXd b(sb);
    for (int i = 0; i < sb; ++i) {
        for (int k = 0; k < sb; ++k) A(i, k) = sys.rows[i][k];
        b(i) = sys.rhs[i];
    }
    Eigen::VectorXd g = A.partialPivLu().solve(b);
    GammaCoefficients out;
    out.values.assign(g.data(), g.data() + sb);
    double r = -sys.rhs[sb];
    for (int k = 0; k < sb; ++k) r += sys.rows[sb][k] * g(k);
    out.dropped_residual = std::abs(r);
    return out;
}

namespace {

struct ExtrapolationBoundary {
    Vec c, gamma;
};

ExtrapolationBoundary extrapolation_data(int sigma) {
    ExtrapolationBoundary e;
    e.c = extrapolation_weights(sigma);
    if (sigma >= 2) e.gamma = solve_gamma(sigma).values;
    return e;
}

double at(const Vec& v, int j) { return j >= 0 && j < static_cast<int>(v.size()) ? v[j] : 0.0; }

}  // namespace

FdStencilSet build_stencils(const SchemeParams& p, const Flux& flux,
                            const OutflowCondition& outflow) {
    if (!flux.is_linear()) throw std::invalid_argument("stencils are defined for linear flux");
    const double w = p.omega, C = flux.courant(p);
    FdStencilSet st;
    st.a_minus = 0.5 * (2.0 - w + w * C);
    st.a_plus = 0.5 * (2.0 - w - w * C);
    st.b0 = w - 1.0;
    st.bulk_first = {1, 1, {{0, 0, 0.5 * (1.0 + C)}, {2, 0, 0.5 * (1.0 - C)}}};
    st.bulk_generic = {1, 1, {{0, 0, st.a_minus}, {2, 0, st.a_plus}, {1, 1, st.b0}}};

    if (outflow.is_kinetic()) {
        const double q = C + 1.0, C2 = C * C, C3 = C2 * C, C4 = C2 * C2;
        st.outflow_first = {0, 1, {{0, 0, 0.25 * q * q}, {1, 0, 0.5 * (1.0 - C)}, {2, 0, 0.25 * (1.0 - C2)}}};
        st.outflow_generic = {0, 1,
                              {{0, 0, 0.25 * q * ((C - 1.0) * w + 2.0)},
                               {1, 0, -0.5 * q * w + 1.0},
                               {2, 0, -0.25 * q * (q * w - 2.0)},
                               {0, 1, 0.5 * q * w * (w - 1.0)},
                               {1, 1, -0.5 * q * (w - 1.0) * (w - 2.0)}}};
        st.outflow_sources = {1.0, 0.0, -(w - 1.0) * (w - 1.0)};
        st.has_second_step = true;
        const double r = C3 * w + C2 * w - C * w - w;
        st.outflow_second = {0, 2,
                             {{0, 0, (C4 * w + 2 * C3 * w - 4 * C2 * w - 2 * C * w + 3 * w + 2 * C3 + 6 * C2 + 6 * C + 2) / 16.0},
                              {1, 0, -r / 4.0},
                              {2, 0, -(C4 * w - 6 * C2 * w + 5 * w + 2 * C3 + 2 * C2 + 6 * C - 10) / 16.0},
                              {3, 0, (r - 2 * C2 + 2) / 8.0}}};
        st.second_source = (C2 * w - w + 2 * C + 2) / 4.0;
        st.outflow_second_next = {1, 2,
                                  {{0, 0, (r + 2 * C2 + 4 * C + 2) / 8.0},
                                   {1, 0, -(C2 * w - w) / 2.0},
                                   {2, 0, -(C3 * w - C2 * w - C * w + w + 2 * C2 - 2) / 8.0},
                                   {3, 0, (C2 * w - w - 2 * C + 2) / 4.0}}};
        st.second_next_source = (C * w - w + 2.0) / 2.0;
        return st;
    }

    const int s = outflow.sigma;
    ExtrapolationBoundary e = extrapolation_data(s);
    const Vec& c = e.c;
    if (s == 1) {
        st.outflow_first = {0, 1, {{0, 0, 0.5 * (1.0 + C)}, {1, 0, 0.5 * (1.0 - C)}}};
        st.outflow_generic = {0, 1, {{0, 0, 0.5 * w * (1.0 + C)}, {1, 0, 0.5 * (2.0 - w - w * C)}}};
    } else {
        const Vec& g = e.gamma;
        Stencil first{0, 1, {}};
        for (int j = 0; j < s; ++j) {
            double wj = j == 1 ? 0.5 * (c[1] + 1.0) + 0.5 * C * (c[1] - 1.0) : 0.5 * c[j] * (1.0 + C);
            first.terms.push_back({j, 0, wj});
        }
        st.outflow_first = first;
        Stencil gen{0, 1, {}};
        const int na = std::max(s, static_cast<int>(g.size()));
        for (int j = 0; j < na; ++j) {
            double wj;
            if (j == 1)
                wj = 0.5 * (c[1] + 1.0 + (1.0 - w) * at(g, 1)) + 0.5 * w * C * (c[1] - 1.0);
            else
                wj = 0.5 * (at(c, j) + (1.0 - w) * at(g, j)) + 0.5 * w * C * at(c, j);
            gen.terms.push_back({j, 0, wj});
        }
        gen.terms.push_back({1, 1, 0.5 * (w - 1.0) * (c[0] + g[0])});
        gen.terms.push_back({2, 1, 0.5 * (w - 1.0) * (c[1] + g[1] - 1.0)});
        for (int j = 3; j <= s; ++j)
            gen.terms.push_back({j, 1, 0.5 * (w - 1.0) * (at(c, j - 1) + at(g, j - 1))});
        st.outflow_generic = gen;
    }
    st.outflow_sources = {1.0, 1.0 - w, 0.0};
    return st;
}

FdSolver::FdSolver(const SchemeParams& p, const Flux& flux, const InitialData& data,
                   const BoundarySpec& spec)
    : p_(p), flux_(flux), spec_(spec) {
    p_.validate();
    check_courant(p_, flux_);
    validate_boundary(p_, flux_, spec_);
    if (spec_.outflow.is_kinetic()) {
        if (!flux_.is_linear())
            throw std::invalid_argument("the kinetic finite-difference form requires linear flux");
        stencils_ = build_stencils(p_, flux_, spec_.outflow);
    } else {
        c_ = extrapolation_weights(spec_.outflow.sigma);
        if (spec_.outflow.sigma >= 2) gamma_ = solve_gamma(spec_.outflow.sigma).values;
    }
    LbmState s = init_at_equilibrium(data, p_, flux_);
    u_initial_ = s.u();
    state_.u_now = u_initial_;
    state_.u_prev = u_initial_;
    sources_ = SourceSequence(spec_.source, spec_.outflow, u_initial_, p_, flux_);
}

double FdSolver::outflow_extrapolation(const Vec& u, const Vec& um) const {
    const int s = spec_.outflow.sigma;
    const double w = p_.omega, lam = p_.lambda;
    const int n = n_;
    auto phi = [&](int j) { return flux_(u[j]); };
    if (n == 0) {
        const double c1 = s > 1 ? c_[1] : 0.0;
        double a = (c1 + 1.0) * u[1], b = (c1 - 1.0) * phi(1);
        for (int j = 0; j < s; ++j) {
            if (j == 1) continue;
            a += c_[j] * u[j];
            b += c_[j] * phi(j);
        }
        return 0.5 * a + b / (2.0 * lam) + sources_(1);
    }
    const double src = sources_(n + 1) + (1.0 - w) * sources_(n);
    if (s == 1)
        return 0.5 * w * u[0] + 0.5 * (2.0 - w) * u[1] + w / (2.0 * lam) * (phi(0) - phi(1)) + src;
    const Vec& g = gamma_;
    double a = (c_[1] + 1.0 + (1.0 - w) * at(g, 1)) * u[1];
    for (int j = 0; j < static_cast<int>(std::max(c_.size(), g.size())); ++j) {
        if (j == 1) continue;
        a += (at(c_, j) + (1.0 - w) * at(g, j)) * u[j];
    }
    double b = (c_[0] + g[0]) * um[1] + (c_[1] + g[1] - 1.0) * um[2];
    for (int j = 3; j <= s; ++j) b += (at(c_, j - 1) + at(g, j - 1)) * um[j];
    double f = (c_[1] - 1.0) * phi(1);
    for (int j = 0; j < s; ++j)
        if (j != 1) f += c_[j] * phi(j);
    return 0.5 * a + 0.5 * (w - 1.0) * b + w / (2.0 * lam) * f + src;
}

void FdSolver::step_kinetic(Vec& next) const {
    const Vec& u = state_.u_now;
    const Vec& um = state_.u_prev;
    auto apply = [](const Stencil& st, const Vec& now, const Vec& prev) {
        double acc = 0.0;
        for (const auto& t : st.terms) acc += t.weight * (t.lag == 0 ? now : prev)[t.offset];
        return acc;
    };
    const int n = n_;
    if (n == 0) {
        next[0] = apply(stencils_.outflow_first, u, u) + sources_(1);
    } else if (n == 1) {
        next[0] = apply(stencils_.outflow_second, u_initial_, u_initial_) +
                  stencils_.second_source * sources_(1) + sources_(2);
        next[1] = apply(stencils_.outflow_second_next, u_initial_, u_initial_) +
                  stencils_.second_next_source * sources_(1);
    } else {
        const auto& sc = stencils_.outflow_sources;
        next[0] = apply(stencils_.outflow_generic, u, um) + sc.next * sources_(n + 1) +
                  sc.current * sources_(n) + sc.previous * sources_(n - 1);
    }
}

void FdSolver::step() {
    const int J = p_.num_points;
    const double w = p_.omega, lam = p_.lambda;
    const Vec& u = state_.u_now;
    const Vec& um = state_.u_prev;
    Vec phi(J);
    for (int j = 0; j < J; ++j) phi[j] = flux_(u[j]);
    Vec next(J, 0.0);
    for (int j = 1; j + 1 < J; ++j) {
        if (n_ == 0)
            next[j] = 0.5 * (u[j - 1] + u[j + 1]) + (phi[j - 1] - phi[j + 1]) / (2.0 * lam);
        else
            next[j] = 0.5 * (2.0 - w) * (u[j - 1] + u[j + 1]) + (w - 1.0) * um[j] +
                      w / (2.0 * lam) * (phi[j - 1] - phi[j + 1]);
    }
    if (spec_.outflow.is_kinetic())
        step_kinetic(next);
    else
        next[0] = outflow_extrapolation(u, um);
    next[J - 1] = spec_.inflow((n_ + 1) * p_.dt());
    state_.u_prev = std::move(state_.u_now);
    state_.u_now = std::move(next);
    ++n_;
}

FdState fd_step(const FdState& s, const FdStencilSet& st) {
    const int J = static_cast<int>(s.u_now.size());
    const Vec& u = s.u_now;
    const Vec& um = s.u_prev;
    Vec next(J, 0.0);
    for (int j = 1; j + 1 < J; ++j)
        next[j] = st.a_minus * u[j - 1] + st.a_plus * u[j + 1] + st.b0 * um[j];
    BoundaryStencil b = st.eventual();
    double acc = 0.0;
    for (std::size_t j = 0; j < b.alpha.size(); ++j) acc += b.alpha[j] * u[j];
    for (std::size_t j = 0; j < b.beta.size(); ++j) acc += b.beta[j] * um[j];
    next[0] = acc;
    return {next, u};
}

Trajectory run_fd(const SchemeParams& p, const Flux& flux, const InitialData& data,
                  const BoundarySpec& spec, int num_steps) {
    FdSolver solver(p, flux, data, spec);
    Trajectory traj;
    traj.reserve(num_steps + 1);
    traj.push_back(solver.u());
    for (int n = 0; n < num_steps; ++n) {
        solver.step();
        traj.push_back(solver.u());
    }
    return traj;
}

double check_equivalence(const SchemeParams& p, const Flux& flux, const InitialData& data,
                         const BoundarySpec& spec, int num_steps) {
    Trajectory a = run(p, flux, data, spec, num_steps);
    Trajectory b = run_fd(p, flux, data, spec, num_steps);
    double dev = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n)
        for (std::size_t j = 0; j < a[n].size(); ++j) dev = std::max(dev, std::abs(a[n][j] - b[n][j]));
    return dev;
}

DiscoveredStencil discover_stencil(const std::vector<Trajectory>& runs, int n_alpha, int n_beta,
                                   int first_n) {
    if (runs.size() < 2) throw std::invalid_argument("stencil discovery needs at least two runs");
    first_n = std::max(first_n, 2);
    int rows = 0;
    for (const auto& t : runs) rows += std::max(0, static_cast<int>(t.size()) - first_n);
    const int cols = n_alpha + n_beta;
    if (rows < cols) throw std::invalid_argument("not enough samples for the requested support");
    Eigen::MatrixXd A(rows, cols);
    Eigen::VectorXd y(rows);
    int r = 0;
    for (const auto& t : runs) {
        for (int n = first_n; n < static_cast<int>(t.size()); ++n, ++r) {
            y(r) = t[n][0];
            for (int j = 0; j < n_alpha; ++j) A(r, j) = t[n - 1][j];
            for (int j = 0; j < n_beta; ++j) A(r, n_alpha + j) = t[n - 2][j];
        }
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    qr.setThreshold(1e-12);
    Eigen::VectorXd x = qr.solve(y);
    DiscoveredStencil out;
    out.alpha.assign(x.data(), x.data() + n_alpha);
    out.beta.assign(x.data() + n_alpha, x.data() + cols);
    out.rank = static_cast<int>(qr.rank());
    out.rank_deficient = out.rank < cols;
    out.rms_residual = std::sqrt((A * x - y).squaredNorm() / rows);
    return out;
}

}  // namespace d1q2
