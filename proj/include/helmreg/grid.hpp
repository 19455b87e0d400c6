#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <functional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace helmreg {

/// One axis of a uniform tensor mesh: the closed interval [lo, hi] cut into n equal intervals.
struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    int n = 2;

    [[nodiscard]] double h() const { return (hi - lo) / n; }
    /// Number of interior nodes (boundary nodes are structurally zero).
    [[nodiscard]] int interior() const { return n - 1; }
    /// Coordinate of interior node i (0-based, so node i sits at lo + (i+1)h).
    [[nodiscard]] double node(int i) const { return lo + (i + 1) * h(); }

    friend bool operator==(const Axis&, const Axis&) = default;
};

/// Uniform 1D or 2D grid with homogeneous Dirichlet boundary.
///
/// Interior nodes are stored x-fastest: flat index k = j * (nx - 1) + i.
class Grid {
  public:
    Grid() = default;

    [[nodiscard]] int dim() const { return dim_; }
    [[nodiscard]] const Axis& axis(int a) const { return axes_.at(static_cast<std::size_t>(a)); }
    [[nodiscard]] double h(int a = 0) const { return axis(a).h(); }

    [[nodiscard]] std::size_t size() const {
        std::size_t s = static_cast<std::size_t>(axes_[0].interior());
        if (dim_ == 2) s *= static_cast<std::size_t>(axes_[1].interior());
        return s;
    }

    /// Volume element of one interior node (h in 1D, hx*hy in 2D).
    [[nodiscard]] double cell_measure() const {
        return dim_ == 1 ? axes_[0].h() : axes_[0].h() * axes_[1].h();
    }

    /// Largest interval count over the axes.
    [[nodiscard]] int max_intervals() const {
        return dim_ == 1 ? axes_[0].n : std::max(axes_[0].n, axes_[1].n);
    }

    friend bool operator==(const Grid&, const Grid&) = default;

  private:
    friend Grid make_grid(int dim, std::span<const Axis> axes);

    int dim_ = 1;
    std::array<Axis, 2> axes_{};
};

/// Builds a validated grid. Rejects dim outside {1,2}, n < 2, or empty/degenerate bounds.
inline Grid make_grid(int dim, std::span<const Axis> axes) {
    if (dim != 1 && dim != 2) throw std::invalid_argument("grid dimension must be 1 or 2");
    if (axes.size() != static_cast<std::size_t>(dim))
        throw std::invalid_argument("expected one axis per dimension");
    Grid g;
    g.dim_ = dim;
    for (int a = 0; a < dim; ++a) {
        const Axis& ax = axes[static_cast<std::size_t>(a)];
        if (ax.n < 2) throw std::invalid_argument("each axis needs at least 2 intervals");
        if (!std::isfinite(ax.lo) || !std::isfinite(ax.hi) || !(ax.hi > ax.lo))
            throw std::invalid_argument("axis bounds must satisfy lo < hi");
        g.axes_[static_cast<std::size_t>(a)] = ax;
    }
    if (dim == 1) g.axes_[1] = Axis{0.0, 1.0, 2};
    return g;
}

inline Grid make_grid_1d(double lo, double hi, int n) {
    const std::array<Axis, 1> ax{Axis{lo, hi, n}};
    return make_grid(1, ax);
}

/// Square 2D grid with the same interval and node count on both axes.
inline Grid make_grid_2d(double lo, double hi, int n) {
    const std::array<Axis, 2> ax{Axis{lo, hi, n}, Axis{lo, hi, n}};
    return make_grid(2, ax);
}

/// Real values at the interior nodes of a grid.
class Field {
  public:
    Field() = default;
    explicit Field(Grid grid) : grid_(std::move(grid)), values_(grid_.size(), 0.0) {}
    Field(Grid grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
        if (values_.size() != grid_.size())
            throw std::invalid_argument("field length does not match grid interior node count");
    }

    [[nodiscard]] const Grid& grid() const { return grid_; }
    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const& { return values_; }
    [[nodiscard]] std::span<double> values() & { return values_; }
    std::span<const double> values() && = delete;
    [[nodiscard]] double operator[](std::size_t k) const { return values_[k]; }
    [[nodiscard]] double& operator[](std::size_t k) { return values_[k]; }

    Field& operator+=(const Field& o) {
        check_same(o);
        for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += o.values_[k];
        return *this;
    }
    Field& operator-=(const Field& o) {
        check_same(o);
        for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= o.values_[k];
        return *this;
    }
    Field& operator*=(double s) {
        for (double& v : values_) v *= s;
        return *this;
    }

    friend Field operator+(Field a, const Field& b) { return a += b; }
    friend Field operator-(Field a, const Field& b) { return a -= b; }
    friend Field operator*(double s, Field a) { return a *= s; }
    friend Field operator*(Field a, double s) { return a *= s; }

    void check_same(const Field& o) const {
        if (!(grid_ == o.grid_)) throw std::invalid_argument("grid mismatch between fields");
    }

  private:
    Grid grid_;
    std::vector<double> values_;
};

inline void require_same_grid(const Grid& a, const Grid& b) {
    if (!(a == b)) throw std::invalid_argument("grid mismatch");
}

/// Samples f at interior nodes. Boundary values of f are never read.
inline Field sample_function(const Grid& grid, const std::function<double(double)>& f) {
    if (grid.dim() != 1) throw std::invalid_argument("1D sampler used on a 2D grid");
    Field out(grid);
    const Axis& ax = grid.axis(0);
    for (int i = 0; i < ax.interior(); ++i) out[static_cast<std::size_t>(i)] = f(ax.node(i));
    return out;
}

inline Field sample_function(const Grid& grid, const std::function<double(double, double)>& f) {
    if (grid.dim() != 2) throw std::invalid_argument("2D sampler used on a 1D grid");
    Field out(grid);
    const Axis& ax = grid.axis(0);
    const Axis& ay = grid.axis(1);
    const int mx = ax.interior();
    for (int j = 0; j < ay.interior(); ++j)
        for (int i = 0; i < mx; ++i)
            out[static_cast<std::size_t>(j) * static_cast<std::size_t>(mx) + static_cast<std::size_t>(i)] =
                f(ax.node(i), ay.node(j));
    return out;
}

/// 17 significant digits; round-trips exactly through strtod. Used by every CSV writer.
inline std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// CSV with header: "index,x,value" (1D) or "i,j,x,y,value" (2D).
inline void write_field_csv(std::ostream& os, const Field& f) {
    const Grid& g = f.grid();
    if (g.dim() == 1) {
        os << "index,x,value\n";
        for (int i = 0; i < g.axis(0).interior(); ++i)
            os << i << ',' << format_real(g.axis(0).node(i)) << ','
               << format_real(f[static_cast<std::size_t>(i)]) << '\n';
        return;
    }
    os << "i,j,x,y,value\n";
    const int mx = g.axis(0).interior();
    for (int j = 0; j < g.axis(1).interior(); ++j)
        for (int i = 0; i < mx; ++i)
            os << i << ',' << j << ',' << format_real(g.axis(0).node(i)) << ','
               << format_real(g.axis(1).node(j)) << ','
               << format_real(f[static_cast<std::size_t>(j) * static_cast<std::size_t>(mx) +
                                static_cast<std::size_t>(i)])
               << '\n';
}

}  // namespace helmreg
