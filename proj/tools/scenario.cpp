#include "scenario.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "d1q2/consistency.hpp"
#include "output.hpp"

namespace d1q2::cli {

namespace {

double to_double(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double d = 0.0;
    try {
        d = std::stod(v, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != v.size() || v.empty()) throw std::invalid_argument("bad number for " + key + ": '" + v + "'");
    return d;
}

long to_long(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    long d = 0;
    try {
        d = std::stol(v, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != v.size() || v.empty()) throw std::invalid_argument("bad integer for " + key + ": '" + v + "'");
    return d;
}

}  // namespace

SchemeParams Scenario::params() const { return {omega, lambda, points, length}; }

Flux Scenario::make_flux() const {
    if (flux == "burgers") return Flux::burgers();
    if (flux == "linear") return Flux::linear(courant * lambda);
    throw std::invalid_argument("unknown flux '" + flux + "'");
}

OutflowCondition Scenario::make_outflow() const {
    if (outflow == "kinetic") return OutflowCondition::kinetic();
    if (outflow.rfind("extrap:", 0) == 0)
        return OutflowCondition::extrapolation(static_cast<int>(to_long("outflow", outflow.substr(7))));
    throw std::invalid_argument("unknown outflow '" + outflow + "' (extrap:<sigma> or kinetic)");
}

SourceMode Scenario::make_source() const {
    if (source == "off") return SourceMode::Off;
    if (source == "correct") return SourceMode::Correct;
    throw std::invalid_argument("unknown source '" + source + "' (off or correct)");
}

InitialData Scenario::make_data() const {
    if (datum == "sin") return InitialData::pointwise(datum_function(Datum::Sin));
    if (datum == "tanh") return InitialData::pointwise(datum_function(Datum::Tanh));
    if (datum == "zero") return InitialData::samples(Vec(points, 0.0));
    if (datum == "random") {
        std::mt19937 rng(seed);
        std::uniform_real_distribution<double> U(-1.0, 1.0);
        std::vector<double> a(4), b(4);
        for (int k = 0; k < 4; ++k) {
            a[k] = 0.25 * U(rng) / (k + 1);
            b[k] = 0.25 * U(rng) / (k + 1);
        }
        const double L = length;
        return InitialData::pointwise([a, b, L](double x) {
            double v = 0.0;
            for (int k = 0; k < 4; ++k) {
                double th = 2.0 * M_PI * (k + 1) * x / L;
                v += a[k] * std::cos(th) + b[k] * std::sin(th);
            }
            return v;
        });
    }
    if (datum.rfind("impulse:", 0) == 0)
        return InitialData::impulse(static_cast<int>(to_long("datum", datum.substr(8))));
    throw std::invalid_argument("unknown datum '" + datum + "'");
}

std::function<double(double)> Scenario::inflow() const {
    if (datum != "sin" && datum != "tanh") return [](double) { return 0.0; };
    auto u0 = datum_function(datum == "sin" ? Datum::Sin : Datum::Tanh);
    const double L = length;
    if (flux == "burgers") return [u0, L](double t) { return burgers_exact_solution(u0, t, L); };
    const double V = courant * lambda;
    return [u0, L, V](double t) { return u0(L - V * t); };
}

BoundarySpec Scenario::spec() const {
    BoundarySpec s;
    s.inflow = inflow();
    s.outflow = make_outflow();
    s.source = make_source();
    return s;
}

int Scenario::steps() const {
    return static_cast<int>(std::floor(final_time / params().dt() + 1e-9));
}

void Scenario::validate() const {
    params().validate();
    if (!(final_time >= 0.0)) throw std::invalid_argument("final-time must be nonnegative");
    Flux f = make_flux();
    check_courant(params(), f);
    validate_boundary(params(), f, spec());
    InitialData d = make_data();
    if (d.kind == InitialData::Kind::ImpulseAtCell && (d.index < 0 || d.index >= points))
        throw std::invalid_argument("impulse index outside the grid");
}

std::string Scenario::serialize() const {
    std::ostringstream os;
    os << "omega=" << num(omega) << " courant=" << num(courant) << " lambda=" << num(lambda)
       << " points=" << points << " length=" << num(length) << " final_time=" << num(final_time)
       << " flux=" << flux << " outflow=" << outflow << " source=" << source << " datum=" << datum
       << " seed=" << seed << " out=" << out;
    return os.str();
}

Scenario Scenario::parse(const std::string& text) {
    Scenario s;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("expected key=value, got '" + tok + "'");
        std::string k = tok.substr(0, eq), v = tok.substr(eq + 1);
        if (k == "omega") s.omega = to_double(k, v);
        else if (k == "courant") s.courant = to_double(k, v);
        else if (k == "lambda") s.lambda = to_double(k, v);
        else if (k == "points") s.points = static_cast<int>(to_long(k, v));
        else if (k == "length") s.length = to_double(k, v);
        else if (k == "final_time") s.final_time = to_double(k, v);
        else if (k == "flux") s.flux = v;
        else if (k == "outflow") s.outflow = v;
        else if (k == "source") s.source = v;
        else if (k == "datum") s.datum = v;
        else if (k == "seed") s.seed = static_cast<unsigned>(to_long(k, v));
        else if (k == "out") s.out = v;
        else throw std::invalid_argument("unknown key '" + k + "'");
    }
    return s;
}

void normalize_flux(Scenario& s, const std::string& token, bool courant_given) {
    if (token == "burgers" || token == "linear") {
        s.flux = token;
        return;
    }
    if (token.rfind("linear:", 0) != 0) throw std::invalid_argument("unknown flux '" + token + "'");
    double V = to_double("flux", token.substr(7));
    double C = V / s.lambda;
    if (courant_given && C != s.courant)
        throw std::invalid_argument("--flux linear:V and --courant disagree");
    s.flux = "linear";
    s.courant = C;
}

}  // namespace d1q2::cli
