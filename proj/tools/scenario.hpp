#pragma once

#include <functional>
#include <string>

#include "d1q2/lbm.hpp"

namespace d1q2::cli {

// Flat description of a run. Linear flux velocity is always courant * lambda.
struct Scenario {
    double omega = 2.0;
    double courant = -0.5;
    double lambda = 1.0;
    int points = 50;
    double length = 1.0;
    double final_time = 1.0;
    std::string flux = "linear";      // linear | burgers
    std::string outflow = "extrap:1";  // extrap:<sigma> | kinetic
    std::string source = "off";        // off | correct
    std::string datum = "sin";         // sin | tanh | impulse:<j> | zero | random (seeded)
    unsigned seed = 1;
    std::string out = ".";

    SchemeParams params() const;
    Flux make_flux() const;
    OutflowCondition make_outflow() const;
    SourceMode make_source() const;
    InitialData make_data() const;
    std::function<double(double)> inflow() const;
    BoundarySpec spec() const;
    int steps() const;  // floor(final_time / dt)

    // Throws std::invalid_argument with a readable message.
    void validate() const;

    std::string serialize() const;
    static Scenario parse(const std::string& text);

    bool operator==(const Scenario&) const = default;
};

// Turns "linear:<V>" into flux = linear with courant = V / lambda. Throws on a bad token.
void normalize_flux(Scenario& s, const std::string& token, bool courant_given);

}  // namespace d1q2::cli
