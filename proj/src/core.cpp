#include "d1q2/core.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace d1q2 {

void SchemeParams::validate() const {
    if (!(omega > 0.0 && omega <= 2.0))
        throw std::invalid_argument("omega must lie in (0, 2]");
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    if (num_points < 3) throw std::invalid_argument("at least 3 grid points are required");
    if (!(length > 0.0)) throw std::invalid_argument("domain length must be positive");
}

std::string Flux::describe() const {
    if (kind_ == Kind::Burgers) return "burgers";
    std::ostringstream os;
    os.precision(17);
    os << "linear:" << velocity_;
    return os.str();
}

bool check_courant(const SchemeParams& p, const Flux& flux) {
    if (!flux.is_linear()) return false;
    double c = std::abs(flux.courant(p));
    if (c > 1.0 + 1e-14) throw std::invalid_argument("|C| > 1 violates the Courant constraint");
    return p.omega == 2.0 && c >= 1.0 - 1e-14;
}

InitialData InitialData::pointwise(std::function<double(double)> f) {
    InitialData d;
    d.kind = Kind::PointwiseFunction;
    d.function = std::move(f);
    return d;
}

InitialData InitialData::impulse(int index, double amplitude) {
    InitialData d;
    d.kind = Kind::ImpulseAtCell;
    d.index = index;
    d.amplitude = amplitude;
    return d;
}

InitialData InitialData::raw(Vec fp, Vec fm) {
    InitialData d;
    d.kind = Kind::RawDistributionPair;
    d.f_plus = std::move(fp);
    d.f_minus = std::move(fm);
    return d;
}

InitialData InitialData::samples(const Vec& u) {
    InitialData d;
    d.kind = Kind::RawDistributionPair;
    d.f_plus = u;
    d.f_minus.clear();
    return d;
}

Vec LbmState::u() const {
    Vec out(f_plus.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = f_plus[j] + f_minus[j];
    return out;
}

Vec LbmState::v(double lambda) const {
    Vec out(f_plus.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = lambda * (f_plus[j] - f_minus[j]);
    return out;
}

Vec grid(const SchemeParams& p) {
    Vec x(p.num_points);
    double dx = p.dx();
    for (int j = 0; j < p.num_points; ++j) x[j] = j * dx;
    x.back() = p.length;
    return x;
}

std::pair<double, double> equilibrium(double u, const SchemeParams& p, const Flux& flux) {
    double half_v = flux(u) / (2.0 * p.lambda);
    return {0.5 * u + half_v, 0.5 * u - half_v};
}

LbmState init_at_equilibrium(const InitialData& data, const SchemeParams& p, const Flux& flux) {
    const int J = p.num_points;
    LbmState s;
    s.f_plus.assign(J, 0.0);
    s.f_minus.assign(J, 0.0);
    auto put = [&](int j, double u) {
        auto [a, b] = equilibrium(u, p, flux);
        s.f_plus[j] = a;
        s.f_minus[j] = b;
    };
    switch (data.kind) {
        case InitialData::Kind::PointwiseFunction: {
            Vec x = grid(p);
            for (int j = 0; j < J; ++j) put(j, data.function(x[j]));
            break;
        }
        case InitialData::Kind::ImpulseAtCell:
            if (data.index < 0 || data.index >= J)
                throw std::invalid_argument("impulse index outside the grid");
            put(data.index, data.amplitude);
            break;
        case InitialData::Kind::RawDistributionPair:
            if (static_cast<int>(data.f_plus.size()) != J)
                throw std::invalid_argument("initial data length does not match the grid");
            if (data.f_minus.empty()) {
                for (int j = 0; j < J; ++j) put(j, data.f_plus[j]);
            } else {
                if (static_cast<int>(data.f_minus.size()) != J)
                    throw std::invalid_argument("initial data length does not match the grid");
                s.f_plus = data.f_plus;
                s.f_minus = data.f_minus;
            }
            break;
    }
    return s;
}

}  // namespace d1q2
