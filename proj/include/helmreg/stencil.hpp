#pragma once

#include <cstddef>
#include <span>

#include "helmreg/grid.hpp"

namespace helmreg {

namespace detail {

// out = -Δʰ in, centered differences with zero ghost values on the boundary.
inline void neg_laplacian_into(const Grid& g, std::span<const double> in, std::span<double> out) {
    const int mx = g.axis(0).interior();
    const double ihx2 = 1.0 / (g.h(0) * g.h(0));
    if (g.dim() == 1) {
        for (int i = 0; i < mx; ++i) {
            const double l = i > 0 ? in[static_cast<std::size_t>(i - 1)] : 0.0;
            const double r = i + 1 < mx ? in[static_cast<std::size_t>(i + 1)] : 0.0;
            out[static_cast<std::size_t>(i)] = (2.0 * in[static_cast<std::size_t>(i)] - l - r) * ihx2;
        }
        return;
    }
    const int my = g.axis(1).interior();
    const double ihy2 = 1.0 / (g.h(1) * g.h(1));
    for (int j = 0; j < my; ++j) {
        const std::size_t row = static_cast<std::size_t>(j) * static_cast<std::size_t>(mx);
        for (int i = 0; i < mx; ++i) {
            const std::size_t k = row + static_cast<std::size_t>(i);
            const double c = in[k];
            const double w = i > 0 ? in[k - 1] : 0.0;
            const double e = i + 1 < mx ? in[k + 1] : 0.0;
            const double s = j > 0 ? in[k - static_cast<std::size_t>(mx)] : 0.0;
            const double n = j + 1 < my ? in[k + static_cast<std::size_t>(mx)] : 0.0;
            out[k] = (2.0 * c - w - e) * ihx2 + (2.0 * c - s - n) * ihy2;
        }
    }
}

}  // namespace detail

/// Discrete negative Laplacian: 3-point stencil in 1D, 5-point in 2D.
inline Field neg_laplacian(const Field& f) {
    Field out(f.grid());
    detail::neg_laplacian_into(f.grid(), f.values(), out.values());
    return out;
}

/// (−Δʰ)^power f; power = 0 returns f unchanged.
inline Field neg_laplacian_power(Field f, int power) {
    for (int p = 0; p < power; ++p) f = neg_laplacian(f);
    return f;
}

}  // namespace helmreg
