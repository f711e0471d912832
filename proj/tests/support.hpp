#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace d1q2::testing {

// Random trigonometric polynomial on [0, 1] with a few low modes.
inline std::function<double(double)> random_smooth(std::mt19937& rng, int modes = 4) {
    std::uniform_real_distribution<double> amp(-1.0, 1.0), phase(0.0, 2.0 * M_PI);
    std::vector<double> a, p;
    for (int k = 0; k < modes; ++k) {
        a.push_back(amp(rng) / (k + 1));
        p.push_back(phase(rng));
    }
    return [a, p](double x) {
        double s = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * std::sin((k + 1) * M_PI * x + p[k]);
        return s;
    };
}

}  // namespace d1q2::testing
