#pragma once

#include <functional>
#include <string>

#include "d1q2/fd.hpp"

namespace d1q2 {

struct ModifiedEquation {
    double effective_advection = 0.0;
    double consistency_defect = 0.0;
    bool is_consistent = false;  // zeroth-order defect below 1e-12
    bool is_consistent_with_target = false;
};

// Leading-order modified equation d_t psi + a d_x psi = O(dx) of a linear stencil.
ModifiedEquation modified_equation(const Stencil& s, double lambda, double V);

enum class Datum { Sin, Tanh };

std::function<double(double)> datum_function(Datum d);
std::string datum_name(Datum d);

double exact_advection_solution(const std::function<double(double)>& datum,
                                const std::function<double(double)>& g, double V, double t,
                                double x, double L);

// Method of characteristics for u_t + (-u^2/2)_x = 0 with a nondecreasing datum in [0, 1],
// valid before characteristics cross.
double burgers_exact_solution(const std::function<double(double)>& datum, double t, double x);

struct ConvergenceConfig {
    Flux flux = Flux::linear(-0.5);
    double omega = 2.0;
    double lambda = 1.0;
    double length = 1.0;
    double final_time = 1.0;
    OutflowCondition outflow = OutflowCondition::extrapolation(1);
    SourceMode source = SourceMode::Off;
    Datum datum = Datum::Sin;
};

struct ConvergenceRow {
    int intervals = 0;
    double dx = 0.0;
    int steps = 0;
    double time = 0.0;
    double l2_error = 0.0;
    double observed_order = 0.0;  // NaN on the first row
    bool unstable = false;
};

// Grid sizes J - 1 with spacings 2.041e-2 ... 2.934e-4.
std::vector<int> table_intervals();

double l2_norm(const Vec& e, double dx);

ConvergenceRow convergence_row(const ConvergenceConfig& cfg, int intervals);
std::vector<ConvergenceRow> convergence_study(const ConvergenceConfig& cfg,
                                              const std::vector<int>& intervals);

struct GrowthFit {
    double exponent = 0.0;
    double residual = 0.0;  // rms of the log-log fit
    int samples = 0;
};

// Least-squares slope of log|u_0^n| against log n for n in [n_lo, n_hi]; zero or non-finite
// samples are skipped. Throws when fewer than two samples remain.
GrowthFit fit_growth(const Vec& abs_u0, int n_lo, int n_hi);

// n in [10, 2(J-1)/|C|]: before the first wave returns from the inflow.
std::pair<int, int> pre_reflection_window(int J, double C);
// n in [5(J-1)/|C|, 50(J-1)/|C|].
std::pair<int, int> long_time_window(int J, double C);

}  // namespace d1q2
