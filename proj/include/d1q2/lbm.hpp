#pragma once

#include <functional>
#include <string>

#include "d1q2/core.hpp"

namespace d1q2 {

struct OutflowCondition {
    enum class Kind { Extrapolation, Kinetic };
    Kind kind = Kind::Extrapolation;
    int sigma = 1;

    static OutflowCondition extrapolation(int sigma);
    static OutflowCondition kinetic() { return {Kind::Kinetic, 0}; }
    bool is_kinetic() const { return kind == Kind::Kinetic; }
    std::string describe() const;
};

// c_j = (-1)^j binom(sigma, j+1), j = 0..sigma-1.
Vec extrapolation_weights(int sigma);

// Correct selects the upwind-targeted correction matching the outflow condition:
// sigma = 1 extrapolation or kinetic.
enum class SourceMode { Off, Correct };

struct BoundarySpec {
    std::function<double(double)> inflow = [](double) { return 0.0; };
    OutflowCondition outflow;
    SourceMode source = SourceMode::Off;
};

void validate_boundary(const SchemeParams& p, const Flux& flux, const BoundarySpec& spec);

// Boundary source sequence S_0^n, n >= 1. Only S_0^1 (and S_0^2 for kinetic) are stored.
class SourceSequence {
public:
    SourceSequence() = default;
    SourceSequence(SourceMode mode, const OutflowCondition& outflow, const Vec& u0,
                   const SchemeParams& p, const Flux& flux);

    double operator()(int n) const;
    double first() const { return s1_; }
    double second() const { return s2_; }
    bool active() const { return mode_ != SourceMode::Off; }

private:
    SourceMode mode_ = SourceMode::Off;
    bool kinetic_ = false;
    double omega_ = 2.0;
    double s1_ = 0.0, s2_ = 0.0;
};

// Closed forms for linear flux with C = V / lambda.
double kinetic_source_first(const Vec& u0, double C);
double kinetic_source_second(const Vec& u0, double C, double omega);
// Construction valid for any flux: S_0^1, S_0^2 chosen so that u_0^1, u_0^2 equal one and
// two upwind steps applied to u^0.
std::pair<double, double> kinetic_upwind_sources(const Vec& u0, const SchemeParams& p,
                                                 const Flux& flux);

LbmState collide(const LbmState& s, const SchemeParams& p, const Flux& flux);

// Transport with inflow/outflow boundaries; source is S_0^{n+1}, time is t^{n+1}.
LbmState transport_and_boundaries(const LbmState& post, const BoundarySpec& spec, int n,
                                  const SchemeParams& p, const Flux& flux, double source);

// Test-only periodic transport.
LbmState transport_periodic(const LbmState& post);

class LbmSolver {
public:
    LbmSolver(const SchemeParams& p, const Flux& flux, const InitialData& data,
              const BoundarySpec& spec);
    LbmSolver(const SchemeParams& p, const Flux& flux, const LbmState& state,
              const BoundarySpec& spec);

    void step();
    const LbmState& state() const { return state_; }
    Vec u() const { return state_.u(); }
    int steps_done() const { return n_; }
    const SourceSequence& sources() const { return sources_; }

private:
    SchemeParams p_;
    Flux flux_;
    BoundarySpec spec_;
    LbmState state_;
    SourceSequence sources_;
    int n_ = 0;
};

using Trajectory = std::vector<Vec>;

Trajectory run(const SchemeParams& p, const Flux& flux, const InitialData& data,
               const BoundarySpec& spec, int num_steps);

// Streaming run: keeps |u_0^n| for n = 0..num_steps and the final field.
struct BoundarySeries {
    Vec abs_u0;
    Vec final_u;
};
BoundarySeries run_boundary_series(const SchemeParams& p, const Flux& flux,
                                   const InitialData& data, const BoundarySpec& spec,
                                   int num_steps);

}  // namespace d1q2
