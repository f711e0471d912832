#pragma once

#include <complex>
#include <string>
#include <vector>

#include "d1q2/spectral.hpp"
#include "scenario.hpp"

namespace d1q2::cli {

struct SimulateOptions {
    int steps = -1;          // default: scenario final time
    int snapshot_every = 0;  // 0: first and last level only
    bool svg = false;
};

struct GrowthOptions {
    std::string regime = "pre";  // pre | long
    int lo = -1, hi = -1;        // explicit window overrides the regime default
};

struct ConvergeOptions {
    std::vector<int> intervals;  // empty: the built-in table preset
    bool svg = false;
};

struct EquivalenceOptions {
    int steps = 25;
};

struct GksOptions {
    bool sweep = false;
    bool kinetic_cubic = false;
    double c_min = -0.99, c_max = 0.99;
    int samples = 199;
};

struct SpectrumOptions {
    std::string matrix = "fd";  // lbm | fd | toeplitz | circulant
    int samples = 400;
    bool svg = false;
};

struct PseudoOptions {
    std::string matrix = "fd";
    PseudoGrid grid;
    bool svg = false;
};

struct DeviationOptions {
    std::complex<double> target = 1.0;
    std::vector<int> sizes;  // J values; empty: 10..100
    bool preset = false;     // fixed set of conditions, target chosen per condition
    bool svg = false;
};

struct ReflectOptions {
    std::complex<double> z0 = 1.0;
    std::vector<double> radii = {1e-2, 5e-3, 2e-3, 1e-3, 5e-4, 2e-4, 1e-4};
};

MatrixKind parse_matrix_kind(const std::string& s);
std::vector<int> parse_int_list(const std::string& s);  // "a,b,c" or "lo:hi[:step]"
std::complex<double> parse_complex(const std::string& s);  // "re" or "re,im"

int cmd_simulate(const Scenario& s, const SimulateOptions& o);
int cmd_growth(const Scenario& s, const GrowthOptions& o);
int cmd_converge(const Scenario& s, const ConvergeOptions& o);
int cmd_equivalence(const Scenario& s, const EquivalenceOptions& o);
int cmd_modified_eq(const Scenario& s);
int cmd_gks(const Scenario& s, const GksOptions& o);
int cmd_spectrum(const Scenario& s, const SpectrumOptions& o);
int cmd_pseudospectrum(const Scenario& s, const PseudoOptions& o);
int cmd_deviation(const Scenario& s, const DeviationOptions& o);
int cmd_reflect(const Scenario& s, const ReflectOptions& o);

}  // namespace d1q2::cli
