#include "d1q2/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>

namespace d1q2 {

const char* matrix_kind_name(MatrixKind k) {
    switch (k) {
        case MatrixKind::LbmBlock: return "lbm-block";
        case MatrixKind::FdCompanion: return "fd-companion";
        case MatrixKind::ToeplitzCompanion: return "toeplitz";
        case MatrixKind::CirculantCompanion: return "circulant";
    }
    return "?";
}

namespace {

Eigen::MatrixXd lbm_block(const SchemeParams& p, double C, const OutflowCondition& outflow) {
    const int J = p.num_points;
    const double w = p.omega;
    const double P = 0.5 * (2.0 - w + w * C), Q = 0.5 * w * (1.0 + C);
    const double R = 0.5 * w * (1.0 - C), S = 0.5 * (2.0 - w - w * C);
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(2 * J, 2 * J);
    // state ordering [f+_0..f+_{J-1}, f-_0..f-_{J-1}]
    auto fp = [](int j) { return j; };
    auto fm = [J](int j) { return J + j; };
    for (int j = 1; j < J; ++j) {
        E(fp(j), fp(j - 1)) = P;
        E(fp(j), fm(j - 1)) = Q;
    }
    for (int j = 0; j + 1 < J; ++j) {
        E(fm(j), fp(j + 1)) = R;
        E(fm(j), fm(j + 1)) = S;
    }
    E(fm(J - 1), fp(J - 2)) = -P;
    E(fm(J - 1), fm(J - 2)) = -Q;
    if (outflow.is_kinetic()) {
        const double h = 0.5 * (1.0 + C);
        E(fp(0), fp(0)) = h * P;
        E(fp(0), fm(0)) = h * Q;
        E(fp(0), fp(2)) += h * R;
        E(fp(0), fm(2)) += h * S;
    } else {
        Vec c = extrapolation_weights(outflow.sigma);
        for (int k = 0; k < outflow.sigma; ++k) {
            E(fp(0), fp(k)) += c[k] * P;
            E(fp(0), fm(k)) += c[k] * Q;
        }
    }
    return E;
}

Eigen::MatrixXd toeplitz_like(const FdStencilSet& st, int J, bool periodic) {
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(2 * J, 2 * J);
    for (int j = 0; j < J; ++j) {
        if (j > 0) E(j, j - 1) = st.a_minus;
        if (j + 1 < J) E(j, j + 1) = st.a_plus;
        E(j, J + j) = st.b0;
        E(J + j, j) = 1.0;
    }
    if (periodic) {
        E(0, J - 1) += st.a_minus;
        E(J - 1, 0) += st.a_plus;
    }
    return E;
}

Eigen::MatrixXd fd_companion(const FdStencilSet& st, int J) {
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(2 * J, 2 * J);
    BoundaryStencil b = st.eventual();
    for (std::size_t k = 0; k < b.alpha.size(); ++k) E(0, k) = b.alpha[k];
    for (std::size_t k = 0; k < b.beta.size(); ++k) E(0, J + k) = b.beta[k];
    for (int j = 1; j + 1 < J; ++j) {
        E(j, j - 1) = st.a_minus;
        E(j, j + 1) = st.a_plus;
        E(j, J + j) = st.b0;
    }
    for (int j = 0; j < J; ++j) E(J + j, j) = 1.0;
    return E;
}

}  // namespace

SchemeMatrix build_matrix(MatrixKind kind, const SchemeParams& p, const Flux& flux,
                          const OutflowCondition& outflow) {
    if (!flux.is_linear()) throw std::invalid_argument("scheme matrices need a linear flux");
    p.validate();
    const int J = p.num_points;
    BoundarySpec spec;
    spec.outflow = outflow;
    validate_boundary(p, flux, spec);
    FdStencilSet st = build_stencils(p, flux, outflow);
    SchemeMatrix m{kind, {}};
    switch (kind) {
        case MatrixKind::LbmBlock: m.E = lbm_block(p, flux.courant(p), outflow); break;
        case MatrixKind::FdCompanion: m.E = fd_companion(st, J); break;
        case MatrixKind::ToeplitzCompanion: m.E = toeplitz_like(st, J, false); break;
        case MatrixKind::CirculantCompanion: m.E = toeplitz_like(st, J, true); break;
    }
    return m;
}

BoundaryPerturbation boundary_perturbation(const SchemeParams& p, const Flux& flux,
                                           const OutflowCondition& outflow) {
    auto fd = build_matrix(MatrixKind::FdCompanion, p, flux, outflow);
    auto tp = build_matrix(MatrixKind::ToeplitzCompanion, p, flux, outflow);
    Eigen::MatrixXd D = fd.E - tp.E;
    const int J = p.num_points;
    return {D.row(0).transpose(), D.row(J - 1).transpose()};
}

SpectrumReport spectrum(const SchemeMatrix& m) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(m.E, false);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
    SpectrumReport r;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        cplx z = es.eigenvalues()(i);
        r.eigenvalues.push_back(z);
        r.max_modulus = std::max(r.max_modulus, std::abs(z));
    }
    std::vector<cplx> conj;
    for (cplx z : r.eigenvalues) conj.push_back(std::conj(z));
    if (matching_distance(r.eigenvalues, conj) > 1e-10)
        throw std::runtime_error("spectrum is not closed under conjugation");
    return r;
}

std::vector<cplx> circulant_closed_form(double omega, double C, int J) {
    auto b = bulk_coefficients(omega, C);
    std::vector<cplx> out;
    for (int k = 0; k < J; ++k) {
        double th = 2.0 * M_PI * k / J;
        cplx eta = b.a_minus * std::polar(1.0, th) + b.a_plus * std::polar(1.0, -th);
        cplx d = std::sqrt(eta * eta + 4.0 * b.b0);
        out.push_back(0.5 * (eta + d));
        out.push_back(0.5 * (eta - d));
    }
    return out;
}

SpectrumReport asymptotic_spectrum(AsymptoticKind kind, double omega, double C,
                                   const OutflowCondition& outflow, int samples) {
    SpectrumReport r;
    auto b = bulk_coefficients(omega, C);
    auto roots_of = [&](cplx eta) {
        cplx d = std::sqrt(eta * eta + 4.0 * b.b0);
        r.asymptotic_curve.push_back(0.5 * (eta + d));
        r.asymptotic_curve.push_back(0.5 * (eta - d));
    };
    if (kind == AsymptoticKind::Circulant) {
        for (int k = 0; k < samples; ++k) {
            double th = -M_PI + 2.0 * M_PI * k / (samples - 1);
            roots_of(b.a_minus * std::polar(1.0, -th) + b.a_plus * std::polar(1.0, th));
        }
    } else if (kind == AsymptoticKind::Toeplitz) {
        if (std::abs(b.a_minus) < 1e-14 || std::abs(b.a_plus) < 1e-14) {
            cplx s = std::sqrt(cplx(omega - 1.0));
            r.isolated_points = {s, -s};
        } else {
            cplx sp = std::sqrt(cplx(b.a_minus / b.a_plus));
            for (int k = 0; k < samples; ++k) {
                double th = M_PI * k / (samples - 1);
                roots_of(b.a_minus / sp * std::polar(1.0, -th) + b.a_plus * sp * std::polar(1.0, th));
            }
        }
    } else {
        // a_{+1} = 0 leaves a single bulk root, so nothing is separated from the curve.
        auto pi = pi_value(omega, C);
        for (const auto& root : pi ? boundary_roots(outflow, omega, C) : std::vector<BoundaryRoot>{}) {
            if (std::abs(root.z) < 1e-12) continue;
            cplx other = *pi / root.kappa;
            if (std::abs(root.kappa) < std::abs(other) - 1e-9) {
                bool dup = false;
                for (cplx q : r.isolated_points)
                    if (std::abs(q - root.z) < 1e-10) dup = true;
                if (!dup) r.isolated_points.push_back(root.z);
            }
        }
    }
    for (cplx z : r.asymptotic_curve) r.max_modulus = std::max(r.max_modulus, std::abs(z));
    for (cplx z : r.isolated_points) r.max_modulus = std::max(r.max_modulus, std::abs(z));
    return r;
}

double max_distance_to_curve(const std::vector<cplx>& points, const std::vector<cplx>& curve) {
    double worst = 0.0;
    for (cplx p : points) {
        double best = std::numeric_limits<double>::infinity();
        for (cplx q : curve) best = std::min(best, std::abs(p - q));
        worst = std::max(worst, best);
    }
    return worst;
}

double matching_distance(std::vector<cplx> a, std::vector<cplx> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    std::vector<bool> used(b.size(), false);
    for (cplx z : a) {
        std::size_t best = b.size();
        double d = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < b.size(); ++k)
            if (!used[k] && std::abs(z - b[k]) < d) {
                d = std::abs(z - b[k]);
                best = k;
            }
        used[best] = true;
        worst = std::max(worst, d);
    }
    return worst;
}

double sigma_min(const SchemeMatrix& m, cplx z) {
    const int n = m.dimension();
    Eigen::MatrixXcd M = -m.E.cast<cplx>();
    M.diagonal().array() += z;
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(M);
    return svd.singularValues()(n - 1);
}

std::vector<PseudoSample> pseudospectrum(const SchemeMatrix& m, const PseudoGrid& g) {
    if (g.nx < 1 || g.ny < 1) throw std::invalid_argument("empty pseudospectrum grid");
    auto coord = [](double lo, double hi, int n, int k) {
        return n == 1 ? lo : lo + (hi - lo) * k / (n - 1);
    };
    std::vector<std::future<std::vector<PseudoSample>>> rows;
    for (int iy = 0; iy < g.ny; ++iy) {
        rows.push_back(std::async(std::launch::async, [&, iy] {
            std::vector<PseudoSample> row;
            double im = coord(g.im_min, g.im_max, g.ny, iy);
            for (int ix = 0; ix < g.nx; ++ix) {
                cplx z(coord(g.re_min, g.re_max, g.nx, ix), im);
                row.push_back({z, sigma_min(m, z)});
            }
            return row;
        }));
    }
    std::vector<PseudoSample> out;
    for (auto& r : rows) {
        auto v = r.get();
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

DeviationEstimate deviation_newton(const SchemeMatrix& m, cplx target) {
    const int n = m.dimension();
    DeviationEstimate d;
    d.target = target;
    Eigen::MatrixXcd M = -m.E.cast<cplx>();
    M.diagonal().array() += target;

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
    cplx mu = es.eigenvalues()(0);
    for (int i = 1; i < n; ++i)
        if (std::abs(es.eigenvalues()(i)) < std::abs(mu)) mu = es.eigenvalues()(i);
    if (std::abs(mu) < 1e-14) {
        d.target_is_eigenvalue = true;
        return d;
    }
    d.epsilon_min_eig = -mu.real();

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
    d.reciprocal_condition = lu.rcond();
    Eigen::MatrixXcd inv = lu.solve(Eigen::MatrixXcd::Identity(n, n));
    cplx tr = inv.trace();
    double scale = inv.cwiseAbs().diagonal().sum();
    if (std::abs(tr) <= 1e-13 * std::max(1.0, scale)) {
        d.trace_vanishes = true;
        d.epsilon_newton = std::numeric_limits<double>::infinity();
        return d;
    }
    d.epsilon_newton = (-1.0 / tr).real();
    return d;
}

double deviation_closed_form(double target, double C, int J) {
    if (target < 0.0) {
        if (J % 2 == 0) return (C + 2.0) / ((C + 3.0) * J + C + 1.0);
        return C * C / ((C * C + C + 2.0) * J + C * C - C - 2.0);
    }
    return -C / ((C - 1.0) * J + C + 1.0);
}

EigenCount count_eigs_near(const std::vector<cplx>& eig, cplx z0, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
    EigenCount c;
    for (cplx z : eig) {
        double d = std::abs(z - z0);
        if (d <= radius) ++c.count;
        if (std::abs(d - radius) < 1e-9) c.boundary_ambiguous = true;
    }
    return c;
}

EigenCount count_eigs_near(const SchemeMatrix& m, cplx z0, double radius) {
    return count_eigs_near(spectrum(m).eigenvalues, z0, radius);
}

std::optional<cplx> tridiag_toeplitz_inverse_entry(int i, int j, int J, cplx eta, double a_minus,
                                                   double a_plus) {
    if (J < 1 || i < 1 || j < 1 || i > J || j > J) throw std::out_of_range("index out of range");
    cplx s = std::sqrt(cplx(a_minus * a_plus));
    if (std::abs(s) < 1e-300) {
        // Triangular case: the inverse is a finite Neumann sum.
        if (i == j) return 1.0 / eta;
        double a = i < j ? a_plus : a_minus;
        int k = std::abs(i - j);
        return std::pow(cplx(a), k) / std::pow(eta, k + 1);
    }
    cplx x = eta / (2.0 * s);
    std::vector<cplx> U(J + 1);
    U[0] = 1.0;
    if (J >= 1) U[1] = 2.0 * x;
    for (int k = 2; k <= J; ++k) U[k] = 2.0 * x * U[k - 1] - U[k - 2];
    if (std::abs(U[J]) < 1e-13) return std::nullopt;
    if (i <= j)
        return std::pow(cplx(a_plus), j - i) / std::pow(s, j - i + 1) * U[i - 1] * U[J - j] / U[J];
    return std::pow(cplx(a_minus), i - j) / std::pow(s, i - j + 1) * U[j - 1] * U[J - i] / U[J];
}

PStability p_stability_check(const SchemeMatrix& m) {
    SpectrumReport r = spectrum(m);
    PStability ps;
    ps.max_modulus = r.max_modulus;
    ps.verdict = r.max_modulus <= 1.0 + 1e-9 ? GksStatus::Stable : GksStatus::Unstable;
    for (std::size_t a = 0; a < r.eigenvalues.size(); ++a) {
        if (std::abs(std::abs(r.eigenvalues[a]) - 1.0) > 1e-6) continue;
        for (std::size_t b = a + 1; b < r.eigenvalues.size(); ++b)
            if (std::abs(r.eigenvalues[a] - r.eigenvalues[b]) < 1e-6) ps.multiplicity_concern = true;
    }
    return ps;
}

}  // namespace d1q2
