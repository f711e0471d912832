#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace d1q2 {

using Vec = std::vector<double>;

struct SchemeParams {
    double omega = 2.0;
    double lambda = 1.0;
    int num_points = 50;
    double length = 1.0;

    double dx() const { return length / (num_points - 1); }
    double dt() const { return dx() / lambda; }
    // Throws std::invalid_argument on an out-of-range parameter.
    void validate() const;
};

class Flux {
public:
    enum class Kind { Linear, Burgers };

    static Flux linear(double velocity) { return Flux(Kind::Linear, velocity); }
    static Flux burgers() { return Flux(Kind::Burgers, 0.0); }

    Kind kind() const { return kind_; }
    bool is_linear() const { return kind_ == Kind::Linear; }
    double velocity() const { return velocity_; }
    double courant(const SchemeParams& p) const { return velocity_ / p.lambda; }

    double operator()(double u) const {
        return kind_ == Kind::Linear ? velocity_ * u : -0.5 * u * u;
    }
    double derivative(double u) const { return kind_ == Kind::Linear ? velocity_ : -u; }

    std::string describe() const;

private:
    Flux(Kind k, double v) : kind_(k), velocity_(v) {}
    Kind kind_;
    double velocity_;
};

// Returns true when a warning applies (|C| = 1 at omega = 2). Throws when |C| > 1.
bool check_courant(const SchemeParams& p, const Flux& flux);

struct InitialData {
    enum class Kind { PointwiseFunction, ImpulseAtCell, RawDistributionPair };
    Kind kind = Kind::PointwiseFunction;
    std::function<double(double)> function;
    int index = 1;
    double amplitude = 1.0;
    Vec f_plus, f_minus;

    static InitialData pointwise(std::function<double(double)> f);
    static InitialData impulse(int index, double amplitude = 1.0);
    static InitialData raw(Vec f_plus, Vec f_minus);
    static InitialData samples(const Vec& u);
};

struct LbmState {
    Vec f_plus, f_minus;

    int size() const { return static_cast<int>(f_plus.size()); }
    Vec u() const;
    Vec v(double lambda) const;
};

struct FdState {
    Vec u_now, u_prev;
};

Vec grid(const SchemeParams& p);

std::pair<double, double> equilibrium(double u, const SchemeParams& p, const Flux& flux);

LbmState init_at_equilibrium(const InitialData& data, const SchemeParams& p, const Flux& flux);

}  // namespace d1q2
