#pragma once

#include "d1q2/core.hpp"
#include "d1q2/lbm.hpp"

namespace d1q2 {

// weight * u_offset^{n - lag}
struct StencilTerm {
    int offset;
    int lag;
    double weight;
};

// u_target^{n + advance} = sum of terms
struct Stencil {
    int target = 0;
    int advance = 1;
    std::vector<StencilTerm> terms;

    double weight_sum() const;
};

// u_0^{n+1} = sum_j alpha_j u_j^n + sum_j beta_j u_j^{n-1}
struct BoundaryStencil {
    Vec alpha, beta;
};

BoundaryStencil to_alpha_beta(const Stencil& s);

// Coefficients on S_0^{n+1}, S_0^n, S_0^{n-1} in the eventual outflow scheme.
struct SourceCoefficients {
    double next = 1.0, current = 0.0, previous = 0.0;
};

struct GammaCoefficients {
    Vec values;
    double dropped_residual = 0.0;
};

struct GammaSystem {
    std::vector<Vec> rows;  // sigma_bar + 1 rows, sigma_bar unknowns
    Vec rhs;
};

GammaSystem gamma_system(int sigma);
GammaCoefficients solve_gamma(int sigma);

struct FdStencilSet {
    double a_minus = 0.0, a_plus = 0.0, b0 = 0.0;
    Stencil bulk_first;    // target 1 (generic node), from u^0
    Stencil bulk_generic;  // target 1 (generic node)
    Stencil outflow_first;
    Stencil outflow_generic;
    SourceCoefficients outflow_sources;

    // Kinetic only: second step written against u^0.
    bool has_second_step = false;
    Stencil outflow_second;       // u_0^2
    Stencil outflow_second_next;  // u_1^2
    double second_source = 0.0;       // coefficient on S_0^1 in u_0^2 (plus S_0^2)
    double second_next_source = 0.0;  // coefficient on S_0^1 in u_1^2

    BoundaryStencil eventual() const { return to_alpha_beta(outflow_generic); }
};

// Linear flux only.
FdStencilSet build_stencils(const SchemeParams& p, const Flux& flux,
                            const OutflowCondition& outflow);

class FdSolver {
public:
    FdSolver(const SchemeParams& p, const Flux& flux, const InitialData& data,
             const BoundarySpec& spec);

    void step();
    const FdState& state() const { return state_; }
    const Vec& u() const { return state_.u_now; }
    int steps_done() const { return n_; }

private:
    double outflow_extrapolation(const Vec& u, const Vec& um) const;
    void step_kinetic(Vec& next) const;

    SchemeParams p_;
    Flux flux_;
    BoundarySpec spec_;
    SourceSequence sources_;
    FdStencilSet stencils_;
    Vec c_, gamma_;
    FdState state_;
    Vec u_initial_;
    int n_ = 0;
};

// Applies one generic step (n >= 1) with homogeneous inflow and no sources, using the
// stencil set only. Linear flux.
FdState fd_step(const FdState& s, const FdStencilSet& st);

Trajectory run_fd(const SchemeParams& p, const Flux& flux, const InitialData& data,
                  const BoundarySpec& spec, int num_steps);

double check_equivalence(const SchemeParams& p, const Flux& flux, const InitialData& data,
                         const BoundarySpec& spec, int num_steps);

struct DiscoveredStencil {
    Vec alpha, beta;
    double rms_residual = 0.0;
    int rank = 0;
    bool rank_deficient = false;
};

// Least-squares fit of u_0^n against u_j^{n-1} (j < n_alpha) and u_j^{n-2} (j < n_beta),
// using every n >= first_n in every trajectory.
DiscoveredStencil discover_stencil(const std::vector<Trajectory>& runs, int n_alpha,
                                   int n_beta, int first_n = 3);

}  // namespace d1q2
