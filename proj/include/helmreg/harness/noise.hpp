#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

#include "helmreg/grid.hpp"
#include "helmreg/norms.hpp"
#include "helmreg/stopping.hpp"

namespace helmreg::harness {

/// Standard-normal draws per node, rescaled so ‖ε‖ = level·‖reference‖.
/// eps0 is the realized norm. Same seed, same field.
inline NoiseModel gen_noise(std::uint64_t seed, double level, const Field& reference) {
    if (!(level >= 0.0)) throw std::invalid_argument("noise level must be nonnegative");
    NoiseModel out{Field(reference.grid()), 0.0, level};
    const double target = level * l2_norm(reference);
    if (target == 0.0) return out;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (double& v : out.epsilon.values()) v = normal(rng);
    out.epsilon *= target / l2_norm(out.epsilon);
    out.eps0 = l2_norm(out.epsilon);
    return out;
}

}  // namespace helmreg::harness
