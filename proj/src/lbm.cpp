#include "d1q2/lbm.hpp"

#include <cmath>
#include <stdexcept>

namespace d1q2 {

OutflowCondition OutflowCondition::extrapolation(int sigma) {
    if (sigma < 1) throw std::invalid_argument("extrapolation order must be >= 1");
    return {Kind::Extrapolation, sigma};
}

std::string OutflowCondition::describe() const {
    return is_kinetic() ? "kinetic" : "extrap:" + std::to_string(sigma);
}

Vec extrapolation_weights(int sigma) {
    Vec c(sigma);
    double binom = sigma;  // binom(sigma, 1)
    for (int j = 0; j < sigma; ++j) {
        c[j] = (j % 2 == 0 ? 1.0 : -1.0) * binom;
        binom = binom * (sigma - j - 1) / (j + 2);
    }
    return c;
}

void validate_boundary(const SchemeParams& p, const Flux&, const BoundarySpec& spec) {
    const int J = p.num_points;
    if (spec.outflow.is_kinetic()) {
        if (J < 4) throw std::invalid_argument("kinetic outflow needs J >= 4");
    } else {
        if (J < spec.outflow.sigma + 2)
            throw std::invalid_argument("extrapolation stencil exceeds the grid (J < sigma + 2)");
        if (spec.source == SourceMode::Correct && spec.outflow.sigma != 1)
            throw std::invalid_argument("the boundary correction is defined for sigma = 1 or kinetic");
    }
}

double kinetic_source_first(const Vec& u, double C) {
    return 0.25 * ((-C * C + 2 * C + 3) * u[0] + (-2 * C - 2) * u[1] + (C * C - 1) * u[2]);
}

double kinetic_source_second(const Vec& u, double C, double w) {
    const double C2 = C * C, C3 = C2 * C;
    const double q = -1 - C + C2 + C3;
    return (0.5 + C + 0.5 * C2 + 0.25 * w * C * (1 - C2)) * u[0] +
           0.125 * (2 - 12 * C - 14 * C2 + 3 * w * q) * u[1] -
           0.25 * (2 - 2 * C - 4 * C2 + w * (-1 + C2)) * u[2] -
           0.125 * (2 - 2 * C2 + w * q) * u[3];
}

std::pair<double, double> kinetic_upwind_sources(const Vec& u0, const SchemeParams& p,
                                                 const Flux& flux) {
    auto upwind = [&](const Vec& w) {
        Vec out(w.size() - 1);
        for (std::size_t j = 0; j + 1 < w.size(); ++j)
            out[j] = w[j] + (flux(w[j]) - flux(w[j + 1])) / p.lambda;
        return out;
    };
    Vec w1 = upwind(u0);
    Vec w2 = upwind(w1);

    BoundarySpec spec;
    spec.outflow = OutflowCondition::kinetic();
    LbmState s0 = init_at_equilibrium(InitialData::samples(u0), p, flux);
    LbmState trial = transport_and_boundaries(collide(s0, p, flux), spec, 0, p, flux, 0.0);
    double s1 = w1[0] - (trial.f_plus[0] + trial.f_minus[0]);
    LbmState s1state = transport_and_boundaries(collide(s0, p, flux), spec, 0, p, flux, s1);
    LbmState trial2 = transport_and_boundaries(collide(s1state, p, flux), spec, 1, p, flux, 0.0);
    double s2 = w2[0] - (trial2.f_plus[0] + trial2.f_minus[0]);
    return {s1, s2};
}

SourceSequence::SourceSequence(SourceMode mode, const OutflowCondition& outflow, const Vec& u0,
                               const SchemeParams& p, const Flux& flux)
    : mode_(mode), kinetic_(outflow.is_kinetic()), omega_(p.omega) {
    if (mode_ == SourceMode::Off) return;
    if (kinetic_) {
        if (flux.is_linear()) {
            double C = flux.courant(p);
            s1_ = kinetic_source_first(u0, C);
            s2_ = kinetic_source_second(u0, C, p.omega);
        } else {
            std::tie(s1_, s2_) = kinetic_upwind_sources(u0, p, flux);
        }
    } else {
        if (outflow.sigma != 1)
            throw std::invalid_argument("the boundary correction is defined for sigma = 1 or kinetic");
        s1_ = 0.5 * (u0[0] - u0[1]) + (flux(u0[0]) - flux(u0[1])) / (2.0 * p.lambda);
    }
}

double SourceSequence::operator()(int n) const {
    if (mode_ == SourceMode::Off || n < 1) return 0.0;
    const double r = omega_ - 1.0;
    if (kinetic_ && n % 2 == 0) return std::pow(r, n - 2) * s2_;
    return std::pow(r, n - 1) * s1_;
}

LbmState collide(const LbmState& s, const SchemeParams& p, const Flux& flux) {
    const double w = p.omega;
    LbmState out = s;
    for (int j = 0; j < s.size(); ++j) {
        double u = s.f_plus[j] + s.f_minus[j];
        auto [ep, em] = equilibrium(u, p, flux);
        out.f_plus[j] = (1.0 - w) * s.f_plus[j] + w * ep;
        out.f_minus[j] = (1.0 - w) * s.f_minus[j] + w * em;
    }
    return out;
}

LbmState transport_and_boundaries(const LbmState& post, const BoundarySpec& spec, int n,
                                  const SchemeParams& p, const Flux& flux, double source) {
    const int J = post.size();
    LbmState out;
    out.f_plus.assign(J, 0.0);
    out.f_minus.assign(J, 0.0);
    for (int j = 1; j < J; ++j) out.f_plus[j] = post.f_plus[j - 1];
    for (int j = 0; j + 1 < J; ++j) out.f_minus[j] = post.f_minus[j + 1];

    const double t_next = (n + 1) * p.dt();
    out.f_minus[J - 1] = -post.f_plus[J - 2] + spec.inflow(t_next);

    if (spec.outflow.is_kinetic()) {
        double ut = post.f_plus[0] + post.f_minus[2];
        out.f_plus[0] = 0.5 * ut + flux(ut) / (2.0 * p.lambda) + source;
    } else {
        Vec c = extrapolation_weights(spec.outflow.sigma);
        double acc = 0.0;
        for (int j = 0; j < spec.outflow.sigma; ++j) acc += c[j] * post.f_plus[j];
        out.f_plus[0] = acc + source;
    }
    return out;
}

LbmState transport_periodic(const LbmState& post) {
    const int J = post.size();
    LbmState out = post;
    for (int j = 0; j < J; ++j) {
        out.f_plus[j] = post.f_plus[(j - 1 + J) % J];
        out.f_minus[j] = post.f_minus[(j + 1) % J];
    }
    return out;
}

LbmSolver::LbmSolver(const SchemeParams& p, const Flux& flux, const InitialData& data,
                     const BoundarySpec& spec)
    : LbmSolver(p, flux, init_at_equilibrium(data, p, flux), spec) {}

LbmSolver::LbmSolver(const SchemeParams& p, const Flux& flux, const LbmState& state,
                     const BoundarySpec& spec)
    : p_(p), flux_(flux), spec_(spec), state_(state) {
    p_.validate();
    check_courant(p_, flux_);
    validate_boundary(p_, flux_, spec_);
    if (state_.size() != p_.num_points)
        throw std::invalid_argument("state length does not match the grid");
    sources_ = SourceSequence(spec_.source, spec_.outflow, state_.u(), p_, flux_);
}

void LbmSolver::step() {
    state_ = transport_and_boundaries(collide(state_, p_, flux_), spec_, n_, p_, flux_,
                                      sources_(n_ + 1));
    ++n_;
}

Trajectory run(const SchemeParams& p, const Flux& flux, const InitialData& data,
               const BoundarySpec& spec, int num_steps) {
    LbmSolver solver(p, flux, data, spec);
    Trajectory traj;
    traj.reserve(num_steps + 1);
    traj.push_back(solver.u());
    for (int n = 0; n < num_steps; ++n) {
        solver.step();
        traj.push_back(solver.u());
    }
    return traj;
}

BoundarySeries run_boundary_series(const SchemeParams& p, const Flux& flux,
                                   const InitialData& data, const BoundarySpec& spec,
                                   int num_steps) {
    LbmSolver solver(p, flux, data, spec);
    BoundarySeries out;
    out.abs_u0.reserve(num_steps + 1);
    auto u0 = [&] { return std::abs(solver.state().f_plus[0] + solver.state().f_minus[0]); };
    out.abs_u0.push_back(u0());
    for (int n = 0; n < num_steps; ++n) {
        solver.step();
        out.abs_u0.push_back(u0());
    }
    out.final_u = solver.u();
    return out;
}

}  // namespace d1q2
