#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "d1q2/gks.hpp"

namespace d1q2 {

enum class MatrixKind { LbmBlock, FdCompanion, ToeplitzCompanion, CirculantCompanion };

const char* matrix_kind_name(MatrixKind k);

struct SchemeMatrix {
    MatrixKind kind = MatrixKind::FdCompanion;
    Eigen::MatrixXd E;

    int dimension() const { return static_cast<int>(E.rows()); }
};

// Homogeneous inflow (g = 0) and no boundary sources. Linear flux only.
SchemeMatrix build_matrix(MatrixKind kind, const SchemeParams& p, const Flux& flux,
                          const OutflowCondition& outflow);

// FdCompanion - ToeplitzCompanion = e_1 b_out^T + e_J b_in^T.
struct BoundaryPerturbation {
    Eigen::VectorXd b_out, b_in;
};
BoundaryPerturbation boundary_perturbation(const SchemeParams& p, const Flux& flux,
                                           const OutflowCondition& outflow);

struct SpectrumReport {
    std::vector<cplx> eigenvalues;
    std::vector<cplx> asymptotic_curve;
    std::vector<cplx> isolated_points;
    double max_modulus = 0.0;
};

// Throws std::runtime_error when the eigensolver fails or conjugate closure is violated.
SpectrumReport spectrum(const SchemeMatrix& m);

// z^2 - z eta_k - b0 = 0, eta_k = a_{-1} e^{2 pi i k / J} + a_{+1} e^{-2 pi i k / J}, k = 0..J-1.
std::vector<cplx> circulant_closed_form(double omega, double C, int J);

enum class AsymptoticKind { Circulant, Toeplitz, OutflowIsolated };

SpectrumReport asymptotic_spectrum(AsymptoticKind kind, double omega, double C,
                                   const OutflowCondition& outflow, int samples = 400);

// Largest distance from a point to its nearest sample of the curve.
double max_distance_to_curve(const std::vector<cplx>& points, const std::vector<cplx>& curve);

// Greedy nearest matching; returns the largest matched distance.
double matching_distance(std::vector<cplx> a, std::vector<cplx> b);

struct PseudoGrid {
    double re_min = -1.5, re_max = 1.5, im_min = -1.5, im_max = 1.5;
    int nx = 61, ny = 61;
};

struct PseudoSample {
    cplx z;
    double sigma_min;
};

std::vector<PseudoSample> pseudospectrum(const SchemeMatrix& m, const PseudoGrid& grid);
double sigma_min(const SchemeMatrix& m, cplx z);

struct DeviationEstimate {
    cplx target;
    double epsilon_newton = 0.0;
    double epsilon_min_eig = 0.0;
    double reciprocal_condition = 0.0;  // of z I - E, 1-norm estimate from the LU factors
    bool target_is_eigenvalue = false;  // both estimates set to 0
    bool trace_vanishes = false;        // epsilon_newton set to +inf
};

DeviationEstimate deviation_newton(const SchemeMatrix& m, cplx target);

// Values from the closed forms for omega = 2, sigma = 1.
double deviation_closed_form(double target, double C, int J);

struct EigenCount {
    int count = 0;
    bool boundary_ambiguous = false;
};

EigenCount count_eigs_near(const SchemeMatrix& m, cplx z0, double radius);
EigenCount count_eigs_near(const std::vector<cplx>& eigenvalues, cplx z0, double radius);

// Entry (i, j), 1-based, of (eta I - A)^{-1} with A tridiagonal Toeplitz (a_minus below,
// a_plus above the diagonal). Empty when U_J is below 1e-13 in modulus.
std::optional<cplx> tridiag_toeplitz_inverse_entry(int i, int j, int J, cplx eta, double a_minus,
                                                   double a_plus);

struct PStability {
    double max_modulus = 0.0;
    GksStatus verdict = GksStatus::Stable;
    bool multiplicity_concern = false;
};

PStability p_stability_check(const SchemeMatrix& m);

}  // namespace d1q2
