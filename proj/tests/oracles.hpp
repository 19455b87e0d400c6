#pragma once

// Test-only oracles. Nothing here calls the sparse solve path of the library.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "helmreg/grid.hpp"

namespace oracle {

using helmreg::Field;
using helmreg::Grid;

/// Eigenvalue of the 3-point −Δʰ for sin(kπ(x−lo)/L) on an axis of length L.
inline double stencil_eigenvalue(const helmreg::Axis& ax, int k) {
    const double h = ax.h();
    const double L = ax.hi - ax.lo;
    const double s = std::sin(k * std::numbers::pi * h / (2.0 * L));
    return 4.0 / (h * h) * s * s;
}

/// sin(kπ(x−lo)/L) sampled on the interior nodes.
inline Field eigenmode(const Grid& g, int k) {
    Field f(g);
    const auto& ax = g.axis(0);
    const double L = ax.hi - ax.lo;
    for (int i = 0; i < ax.interior(); ++i)
        f[static_cast<std::size_t>(i)] = std::sin(k * std::numbers::pi * (ax.node(i) - ax.lo) / L);
    return f;
}

inline Field eigenmode_2d(const Grid& g, int kx, int ky) {
    Field f(g);
    const auto& ax = g.axis(0);
    const auto& ay = g.axis(1);
    const int mx = ax.interior();
    for (int j = 0; j < ay.interior(); ++j)
        for (int i = 0; i < mx; ++i)
            f[static_cast<std::size_t>(j * mx + i)] =
                std::sin(kx * std::numbers::pi * (ax.node(i) - ax.lo) / (ax.hi - ax.lo)) *
                std::sin(ky * std::numbers::pi * (ay.node(j) - ay.lo) / (ay.hi - ay.lo));
    return f;
}

/// Filter gain 1/(1 + δ²λ).
inline double filter_gain(double delta, double lambda) { return 1.0 / (1.0 + delta * delta * lambda); }

/// Noise-free error multipliers after j updates, per eigenmode.
inline double tl_multiplier(double g, double alpha) { return alpha / (g + alpha); }
inline double itl_multiplier(double g, double alpha, int j) { return std::pow(alpha / (g + alpha), j + 1); }
inline double mitlar_multiplier(double delta, double lambda, double alpha, int j) {
    const double x = alpha * delta * delta * lambda;
    return std::pow(x / (1.0 + x), j + 1);
}

inline Field random_field(const Grid& g, std::uint64_t seed, double scale = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-scale, scale);
    Field f(g);
    for (double& v : f.values()) v = U(rng);
    return f;
}

/// Random combination of the first `modes` sine modes (1D).
inline Field band_limited(const Grid& g, std::uint64_t seed, int modes) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    Field f(g);
    for (int k = 1; k <= modes; ++k) f += U(rng) * eigenmode(g, k);
    return f;
}

inline double max_abs_diff(const Field& a, const Field& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

inline double max_abs(const Field& a) {
    double m = 0.0;
    for (double v : a.values()) m = std::max(m, std::abs(v));
    return m;
}

/// max|a − b| / max(max|b|, tiny).
inline double rel_diff(const Field& a, const Field& b) {
    return max_abs_diff(a, b) / std::max(max_abs(b), 1e-300);
}

}  // namespace oracle
