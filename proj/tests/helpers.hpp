#pragma once

#include <random>
#include <vector>

#include "vanhove/presets.hpp"

namespace vh_test {

using namespace vanhove;

inline Mat random_state(Index d, std::mt19937_64& rng) { return random_density(d, rng); }

// Sorted z_1 <= ... <= z_m in [0, t].
inline std::vector<double> random_sorted_z(int m, double t, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(0.0, t);
    std::vector<double> z(m);
    for (auto& x : z) x = U(rng);
    std::sort(z.begin(), z.end());
    return z;
}

inline SystemBathModel preset_model(const std::string& name, std::uint64_t seed = 0, int bath = -1,
                                    double lambda = 0.1) {
    PresetOptions o;
    o.seed = seed;
    o.bath_levels = bath;
    o.lambda = lambda;
    return make_preset(name, o).model;
}

inline double rel(double a, double b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace vh_test
