#include "d1q2/gks.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace d1q2 {

BulkCoefficients bulk_coefficients(double omega, double C) {
    return {0.5 * (2.0 - omega + omega * C), 0.5 * (2.0 - omega - omega * C), omega - 1.0};
}

std::optional<double> pi_value(double omega, double C) {
    auto b = bulk_coefficients(omega, C);
    if (std::abs(b.a_plus) < 1e-15) return std::nullopt;
    return b.a_minus / b.a_plus;
}

cplx char_residual(cplx z, cplx kappa, double omega, double C) {
    auto b = bulk_coefficients(omega, C);
    return z - b.b0 / z - b.a_minus / kappa - b.a_plus * kappa;
}

namespace {

// Both roots of a_+ k^2 - eta k + a_- = 0, in no particular order. Degenerate cases yield one.
std::vector<cplx> raw_roots(cplx z, const BulkCoefficients& b) {
    cplx eta = z - b.b0 / z;
    const double tiny = 1e-15;
    if (std::abs(b.a_plus) < tiny) {
        if (std::abs(eta) < tiny) return {};
        return {b.a_minus / eta};
    }
    if (std::abs(b.a_minus) < tiny) return {eta / b.a_plus};
    cplx d = std::sqrt(eta * eta - 4.0 * b.a_plus * b.a_minus);
    return {(eta - d) / (2.0 * b.a_plus), (eta + d) / (2.0 * b.a_plus)};
}

cplx nearest(const std::vector<cplx>& r, cplx target) {
    return *std::min_element(r.begin(), r.end(), [&](cplx a, cplx c) {
        return std::abs(a - target) < std::abs(c - target);
    });
}

cplx smallest(const std::vector<cplx>& r) {
    return *std::min_element(r.begin(), r.end(), [](cplx a, cplx c) { return std::abs(a) < std::abs(c); });
}

cplx poly_eval(const Vec& c, cplx x) {
    cplx acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

cplx poly_deriv(const Vec& c, cplx x) {
    cplx acc = 0.0;
    for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k) acc = acc * x + double(k) * c[k];
    return acc;
}

Vec pmul(const Vec& a, const Vec& b) {
    if (a.empty() || b.empty()) return {};
    Vec r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

Vec padd(const Vec& a, const Vec& b, double sb = 1.0) {
    Vec r(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += sb * b[i];
    return r;
}

}  // namespace

CharRoots char_roots(cplx z, double omega, double C) {
    if (std::abs(z) == 0.0) throw std::invalid_argument("char_roots requires z != 0");
    auto b = bulk_coefficients(omega, C);
    CharRoots out;
    out.degenerate = std::abs(b.a_plus) < 1e-15 || std::abs(b.a_minus) < 1e-15;
    auto r = raw_roots(z, b);
    if (r.empty()) {
        out.ambiguous = true;
        return out;
    }
    if (r.size() == 1) {
        if (std::abs(r[0]) < 1.0)
            out.kappa_minus = r[0];
        else
            out.kappa_plus = r[0];
        return out;
    }
    const double m = std::abs(z);
    cplx km;
    if (m > 1.0 + 1e-9) {
        km = smallest(r);
    } else if (m < 1.0 - 1e-9) {
        const cplx dir = z / m, start = dir * 1.5;
        const int steps = 4000;
        km = smallest(raw_roots(start, b));
        for (int k = 1; k <= steps; ++k) {
            double s = double(k) / steps;
            cplx zk = dir * (1.5 * std::pow(m / 1.5, s)) * cplx(1.0, 1e-2 * std::sin(M_PI * s));
            auto rk = raw_roots(zk, b);
            if (rk.size() < 2) break;
            km = nearest(rk, km);
        }
        km = nearest(r, km);
        const cplx sq = std::sqrt(cplx(4.0 * b.a_minus * b.a_plus));
        for (double sg : {1.0, -1.0})
            for (cplx bp : polynomial_roots({cplx(-b.b0), -sg * sq, cplx(1.0)})) {
                double t = std::clamp(((bp - z) * std::conj(start - z)).real() / std::norm(start - z), 0.0, 1.0);
                if (std::abs(bp - (z + t * (start - z))) < 2e-2) out.ambiguous = true;
            }
    } else {
        cplx a = nearest(r, smallest(raw_roots(z * (1.0 + 1e-6), b)));
        cplx c = nearest(r, smallest(raw_roots(z * (1.0 + 1e-8), b)));
        km = c;
        if (std::abs(a - c) > 1e-9 || std::abs(r[0] - r[1]) < 1e-7) out.ambiguous = true;
    }
    cplx kp = std::abs(r[0] - km) <= std::abs(r[1] - km) ? r[1] : r[0];
    out.kappa_minus = km;
    out.kappa_plus = kp;
    return out;
}

std::optional<double> group_velocity(cplx z0, cplx k0, double omega, double C, double lambda) {
    auto b = bulk_coefficients(omega, C);
    cplx deta_dz = 1.0 + b.b0 / (z0 * z0);
    if (std::abs(deta_dz) < 1e-14) return std::nullopt;
    cplx dz_dk = (b.a_plus - b.a_minus / (k0 * k0)) / deta_dz;
    return (-lambda * (k0 / z0) * dz_dk).real();
}

cplx boundary_residual(const BoundaryStencil& b, cplx z, cplx kappa) {
    return z * z - z * poly_eval(b.alpha, kappa) - poly_eval(b.beta, kappa);
}

std::vector<cplx> polynomial_roots(const std::vector<cplx>& coeffs) {
    std::vector<cplx> c = coeffs;
    while (!c.empty() && std::abs(c.back()) < 1e-300) c.pop_back();
    const int deg = static_cast<int>(c.size()) - 1;
    if (deg < 1) return {};
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) M(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) M(i, deg - 1) = -c[i] / c[deg];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
    std::vector<cplx> out(deg);
    for (int i = 0; i < deg; ++i) out[i] = es.eigenvalues()(i);
    return out;
}

std::vector<cplx> kinetic_cubic_roots(double w, double C) {
    const double C2 = C * C, w2 = w * w, w3 = w2 * w;
    std::vector<cplx> c = {
        -2 * C * w3 + 4 * C * w2 - 2 * w3 - 2 * C * w + 4 * w2 - 2 * w,
        2 * C2 * w2 - C2 * w - 2 * C * w2 + 2 * C * w - 4 * w2 - 2 * C + 7 * w - 2,
        -(C2 * w + 2 * C - w - 2),
        4.0};
    return polynomial_roots(c);
}

std::optional<cplx> kinetic_kappa(cplx z, double w, double C) {
    const double q = C + 1.0;
    cplx num = q * w * w - q * w - 2.0 * z * z;
    cplx den = q * w * w - q * z * z - 2.0 * q * w + (q * w - 2.0) * z + C + 1.0;
    if (std::abs(den) < 1e-14) return std::nullopt;
    return num / den;
}

namespace {

std::vector<BoundaryRoot> resultant_roots(const BoundaryStencil& bs, const BulkCoefficients& b) {
    // Boundary: z^2 + A1 z + A0 ; bulk (times kappa): B2 z^2 + B1 z + B0, all polynomials in kappa.
    Vec A2 = {1.0};
    Vec A1 = padd({}, bs.alpha, -1.0);
    Vec A0 = padd({}, bs.beta.empty() ? Vec{0.0} : bs.beta, -1.0);
    Vec B2 = {0.0, 1.0};
    Vec B1 = {-b.a_minus, 0.0, -b.a_plus};
    Vec B0 = {0.0, -b.b0};
    Vec t0 = padd(pmul(A2, B0), pmul(A0, B2), -1.0);
    Vec t1 = padd(pmul(A2, B1), pmul(A1, B2), -1.0);
    Vec t2 = padd(pmul(A1, B0), pmul(A0, B1), -1.0);
    Vec R = padd(pmul(t0, t0), pmul(t1, t2), -1.0);
    double scale = 0.0;
    for (double v : R) scale = std::max(scale, std::abs(v));
    while (!R.empty() && std::abs(R.back()) <= 1e-13 * scale) R.pop_back();
    std::vector<cplx> rc(R.begin(), R.end());
    std::vector<BoundaryRoot> out;
    for (cplx k : polynomial_roots(rc)) {
        if (std::abs(k) < 1e-8) continue;
        std::vector<cplx> zs;
        cplx a1 = -poly_eval(bs.alpha, k), a0 = -poly_eval(bs.beta, k);
        cplx den = k * a1 - (-(b.a_minus + b.a_plus * k * k));
        if (std::abs(den) > 1e-12) {
            zs.push_back(-(k * a0 - (-b.b0 * k)) / den);
        } else {
            cplx d = std::sqrt(a1 * a1 - 4.0 * a0);
            zs = {(-a1 - d) / 2.0, (-a1 + d) / 2.0};
        }
        for (cplx z : zs) {
            // Newton polish on (boundary, bulk) residuals.
            for (int it = 0; it < 30; ++it) {
                cplx f1 = z * z - z * poly_eval(bs.alpha, k) - poly_eval(bs.beta, k);
                cplx f2 = k * z * z - (b.a_minus + b.a_plus * k * k) * z - b.b0 * k;
                cplx j11 = 2.0 * z - poly_eval(bs.alpha, k);
                cplx j12 = -z * poly_deriv(bs.alpha, k) - poly_deriv(bs.beta, k);
                cplx j21 = 2.0 * k * z - (b.a_minus + b.a_plus * k * k);
                cplx j22 = z * z - 2.0 * b.a_plus * k * z - b.b0;
                cplx det = j11 * j22 - j12 * j21;
                if (std::abs(det) < 1e-300) break;
                cplx dz = (f1 * j22 - f2 * j12) / det;
                cplx dk = (j11 * f2 - j21 * f1) / det;
                z -= dz;
                k -= dk;
                if (std::abs(dz) + std::abs(dk) < 1e-15) break;
            }
            if (std::abs(z) < 1e-8 || std::abs(k) < 1e-8) continue;
            double r1 = std::abs(z * z - z * poly_eval(bs.alpha, k) - poly_eval(bs.beta, k));
            double r2 = std::abs(k * z * z - (b.a_minus + b.a_plus * k * k) * z - b.b0 * k);
            double sc = 1.0 + std::norm(z) + std::norm(k);
            if (r1 > 1e-9 * sc || r2 > 1e-9 * sc) continue;
            out.push_back({z, k, false});
        }
    }
    return out;
}

void push_unique(std::vector<BoundaryRoot>& v, const BoundaryRoot& r, double tol) {
    for (const auto& e : v)
        if (std::abs(e.z - r.z) < tol && std::abs(e.kappa - r.kappa) < tol) return;
    v.push_back(r);
}

}  // namespace

std::vector<BoundaryRoot> boundary_roots(const OutflowCondition& outflow, double omega, double C) {
    auto b = bulk_coefficients(omega, C);
    auto pi = pi_value(omega, C);
    std::vector<BoundaryRoot> out;
    auto add = [&](cplx z, cplx k) {
        if (std::abs(z) > 1e-12) push_unique(out, {z, k, true}, 1e-12);
    };
    add(1.0, 1.0);
    if (outflow.is_kinetic()) {
        if (pi) {
            add(1.0 - omega, *pi);
            add(omega - 1.0, -*pi);
        }
        for (cplx z : kinetic_cubic_roots(omega, C)) {
            auto k = kinetic_kappa(z, omega, C);
            if (k && std::abs(z) > 1e-12) push_unique(out, {z, *k, false}, 1e-12);
        }
        return out;
    }
    if (pi) add(omega - 1.0, -*pi);
    if (outflow.sigma >= 2) add(1.0 - omega, 1.0);
    if (outflow.sigma >= 3) {
        SchemeParams p{omega, 1.0, outflow.sigma + 4, 1.0};
        BoundaryStencil bs = build_stencils(p, Flux::linear(C), outflow).eventual();
        const std::vector<BoundaryRoot> known = out;
        for (const auto& r : resultant_roots(bs, b)) {
            bool near_known = false;
            for (const auto& k : known)
                if (std::abs(k.z - r.z) < 1e-5 && std::abs(k.kappa - r.kappa) < 1e-4) near_known = true;
            if (!near_known) push_unique(out, r, 1e-8);
        }
    }
    return out;
}

GksVerdict gks_verdict(const OutflowCondition& outflow, double omega, double C) {
    GksVerdict v;
    for (const auto& r : boundary_roots(outflow, omega, C)) {
        if (std::abs(r.z) < 1.0 - 1e-9) continue;
        CharRoots cr = char_roots(r.z, omega, C);
        if (cr.ambiguous) v.notes.push_back("ambiguous root continuation on the unit circle");
        if (!cr.kappa_minus) continue;
        if (std::abs(r.kappa - *cr.kappa_minus) <= 1e-6 * std::max(1.0, std::abs(r.kappa)))
            v.unstable_modes.push_back(r);
    }
    v.status = v.unstable_modes.empty() ? GksStatus::Stable : GksStatus::Unstable;
    if (!outflow.is_kinetic() && outflow.sigma >= 3 && C < 0.0 && omega < 2.0)
        v.notes.push_back("unproven regime: verdict rests on a numerical root search");
    return v;
}

ReflectionValue reflection_out(cplx z, const BoundaryStencil& b, double omega, double C) {
    ReflectionValue out;
    CharRoots cr = char_roots(z, omega, C);
    if (!cr.kappa_minus || !cr.kappa_plus || std::abs(*cr.kappa_minus - *cr.kappa_plus) < 1e-12) {
        out.coincident_roots = true;
        return out;
    }
    auto g = [&](cplx k) { return z - poly_eval(b.alpha, k) - poly_eval(b.beta, k) / z; };
    cplx den = g(*cr.kappa_minus);
    cplx num = g(*cr.kappa_plus);
    if (std::abs(den) < 1e-10) out.pole = true;
    out.value = -num / den;
    return out;
}

std::optional<cplx> reflection_in(cplx z, double omega, double C, int J) {
    auto pi = pi_value(omega, C);
    if (!pi) return std::nullopt;
    CharRoots cr = char_roots(z, omega, C);
    if (!cr.kappa_minus) return std::nullopt;
    return -std::pow(cplx(*pi), -(J - 1)) * std::pow(*cr.kappa_minus, 2 * J - 2);
}

PoleOrder pole_order(const std::function<cplx(cplx)>& fn, cplx z0, const std::vector<double>& radii,
                     const std::vector<double>& angles) {
    std::vector<double> th = angles;
    if (th.empty())
        for (int k = 0; k < 16; ++k) th.push_back(2.0 * M_PI * (k + 0.5) / 16.0);
    const int n = static_cast<int>(radii.size());
    if (n < 2) throw std::invalid_argument("pole_order needs at least two radii");
    Vec xs(n), ys(n);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (double t : th) acc += std::log(std::abs(fn(z0 + std::polar(radii[i], t))));
        xs[i] = std::log(radii[i]);
        ys[i] = acc / th.size();
    }
    double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (int i = 0; i < n; ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    PoleOrder out;
    out.slope = sxy / sxx;
    double res = 0.0;
    for (int i = 0; i < n; ++i) {
        double e = ys[i] - (my + out.slope * (xs[i] - mx));
        res += e * e;
    }
    out.residual = std::sqrt(res / n);
    out.order = static_cast<int>(std::lround(-out.slope));
    out.ambiguous = std::abs(-out.slope - out.order) > 0.2;
    return out;
}

}  // namespace d1q2
