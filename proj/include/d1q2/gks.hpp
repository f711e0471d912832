#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "d1q2/fd.hpp"

namespace d1q2 {

using cplx = std::complex<double>;

struct BulkCoefficients {
    double a_minus, a_plus, b0;
};

BulkCoefficients bulk_coefficients(double omega, double C);

// a_{-1} / a_{+1}; empty when a_{+1} = 0.
std::optional<double> pi_value(double omega, double C);

struct CharRoots {
    std::optional<cplx> kappa_minus, kappa_plus;
    bool degenerate = false;  // a_{-1} = 0 or a_{+1} = 0
    bool ambiguous = false;   // continuation from outside the disk is inconclusive
};

// kappa_minus is the root inside the unit disk for |z| > 1, continued radially elsewhere.
CharRoots char_roots(cplx z, double omega, double C);

// Residual of eta(z) = a_{-1}/kappa + a_{+1} kappa.
cplx char_residual(cplx z, cplx kappa, double omega, double C);

// V_g = -lambda (kappa/z) dz/dkappa. Empty at a pole.
std::optional<double> group_velocity(cplx z0, cplx k0, double omega, double C, double lambda);

struct BoundaryRoot {
    cplx z, kappa;
    bool closed_form = true;
};

std::vector<BoundaryRoot> boundary_roots(const OutflowCondition& outflow, double omega, double C);

// Roots of the third-order equation in z for the kinetic condition and kappa(z) attached.
std::vector<cplx> kinetic_cubic_roots(double omega, double C);
std::optional<cplx> kinetic_kappa(cplx z, double omega, double C);

// Residual of the transformed boundary equation z^2 - z P(kappa) - Q(kappa).
cplx boundary_residual(const BoundaryStencil& b, cplx z, cplx kappa);

enum class GksStatus { Stable, Unstable };

struct GksVerdict {
    GksStatus status = GksStatus::Stable;
    std::vector<BoundaryRoot> unstable_modes;
    std::vector<std::string> notes;
};

GksVerdict gks_verdict(const OutflowCondition& outflow, double omega, double C);

struct ReflectionValue {
    cplx value{0.0, 0.0};
    bool pole = false;
    bool coincident_roots = false;
};

ReflectionValue reflection_out(cplx z, const BoundaryStencil& b, double omega, double C);
std::optional<cplx> reflection_in(cplx z, double omega, double C, int J);

struct PoleOrder {
    int order = 0;
    double slope = 0.0;
    double residual = 0.0;
    bool ambiguous = false;
};

// Fits log|fn| against log r on circles z0 + r e^{i theta}; angles default to a full circle.
PoleOrder pole_order(const std::function<cplx(cplx)>& fn, cplx z0, const std::vector<double>& radii,
                     const std::vector<double>& angles = {});

// Roots of sum_k c_k x^k via a companion matrix; trailing zeros are trimmed.
std::vector<cplx> polynomial_roots(const std::vector<cplx>& coeffs);

}  // namespace d1q2
