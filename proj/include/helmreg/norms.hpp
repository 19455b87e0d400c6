#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "helmreg/grid.hpp"

namespace helmreg {

enum class Quadrature { Trapezoid, Simpson };

inline Quadrature parse_quadrature(std::string_view s) {
    if (s == "trapezoid") return Quadrature::Trapezoid;
    if (s == "simpson") return Quadrature::Simpson;
    throw std::invalid_argument("unknown quadrature '" + std::string(s) + "'");
}

namespace detail {

// Interior-node weights of the composite rule on one axis (boundary nodes carry zero data).
inline std::vector<double> axis_weights(const Axis& ax, Quadrature q) {
    const int m = ax.interior();
    std::vector<double> w(static_cast<std::size_t>(m), ax.h());
    if (q == Quadrature::Simpson) {
        if (ax.n % 2 != 0) throw std::invalid_argument("Simpson's rule needs an even interval count");
        // Node i+1 in global numbering: odd nodes weight 4h/3, even interior nodes 2h/3.
        for (int i = 0; i < m; ++i) w[static_cast<std::size_t>(i)] = ((i + 1) % 2 == 1 ? 4.0 : 2.0) * ax.h() / 3.0;
    }
    return w;
}

inline double weighted_sum(const Grid& g, Quadrature q, std::span<const double> a, std::span<const double> b) {
    if (q == Quadrature::Trapezoid) {
        double s = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
        return s * g.cell_measure();
    }
    const auto wx = axis_weights(g.axis(0), q);
    if (g.dim() == 1) {
        double s = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) s += wx[k] * a[k] * b[k];
        return s;
    }
    const auto wy = axis_weights(g.axis(1), q);
    const std::size_t mx = wx.size();
    double s = 0.0;
    for (std::size_t j = 0; j < wy.size(); ++j)
        for (std::size_t i = 0; i < mx; ++i) s += wx[i] * wy[j] * a[j * mx + i] * b[j * mx + i];
    return s;
}

}  // namespace detail

/// Discrete L² inner product. With the trapezoid rule this is h^d times the Euclidean
/// product, under which every stencil operator in this library is self-adjoint.
inline double inner_product(const Field& a, const Field& b, Quadrature q = Quadrature::Trapezoid) {
    a.check_same(b);
    return detail::weighted_sum(a.grid(), q, a.values(), b.values());
}

inline double l2_norm(const Field& f, Quadrature q = Quadrature::Trapezoid) {
    return std::sqrt(detail::weighted_sum(f.grid(), q, f.values(), f.values()));
}

/// |f|₁ from forward differences of the zero-extended field, boundary segments included.
inline double h1_seminorm(const Field& f) {
    const Grid& g = f.grid();
    const auto v = f.values();
    const int mx = g.axis(0).interior();
    auto sq = [](double d) { return d * d; };
    if (g.dim() == 1) {
        const double h = g.h(0);
        double s = 0.0;
        for (int i = 0; i <= mx; ++i) {
            const double r = i < mx ? v[static_cast<std::size_t>(i)] : 0.0;
            const double l = i > 0 ? v[static_cast<std::size_t>(i - 1)] : 0.0;
            s += sq(r - l);
        }
        return std::sqrt(s / h);
    }
    const int my = g.axis(1).interior();
    const double hx = g.h(0), hy = g.h(1);
    auto at = [&](int i, int j) -> double {
        if (i < 0 || j < 0 || i >= mx || j >= my) return 0.0;
        return v[static_cast<std::size_t>(j) * static_cast<std::size_t>(mx) + static_cast<std::size_t>(i)];
    };
    double sx = 0.0, sy = 0.0;
    for (int j = 0; j < my; ++j)
        for (int i = 0; i <= mx; ++i) sx += sq(at(i, j) - at(i - 1, j));
    for (int j = 0; j <= my; ++j)
        for (int i = 0; i < mx; ++i) sy += sq(at(i, j) - at(i, j - 1));
    // (Δu/hx)² · hx·hy summed over x-edges, likewise for y.
    return std::sqrt(sx * hy / hx + sy * hx / hy);
}

}  // namespace helmreg
