#pragma once

#include <cmath>
#include <stdexcept>

#include "helmreg/grid.hpp"
#include "helmreg/solver.hpp"
#include "helmreg/stencil.hpp"

namespace helmreg {

/// Discrete Helmholtz differential filter of radius δ on a fixed grid.
///
/// A = I + δ²(−Δʰ) is the forward operator and G = A⁻¹ is the filter. G is never
/// assembled; applying it is one shifted solve.
class HelmholtzFilter {
  public:
    HelmholtzFilter(Grid grid, double delta, SolverOptions opt = {})
        : grid_(std::move(grid)), delta_(delta), opt_(opt) {
        if (!(delta > 0.0) || !std::isfinite(delta * delta))
            throw std::invalid_argument("filter radius δ must be positive with finite δ²");
    }

    [[nodiscard]] const Grid& grid() const { return grid_; }
    [[nodiscard]] double delta() const { return delta_; }
    [[nodiscard]] double delta2() const { return delta_ * delta_; }
    [[nodiscard]] const SolverOptions& solver_options() const { return opt_; }

    /// A f = f + δ²(−Δʰ f).
    [[nodiscard]] Field apply_A(const Field& f) const {
        require_same_grid(grid_, f.grid());
        Field out = neg_laplacian(f);
        out *= delta2();
        out += f;
        return out;
    }

    /// G f, the unique x with A x = f.
    [[nodiscard]] Field apply(const Field& f) const { return solve_shifted(grid_, delta2(), f, opt_); }

    /// Solves (I + θ(−Δʰ)) x = rhs on this filter's grid with its solver settings.
    [[nodiscard]] Field solve(double theta, const Field& rhs) const { return solve_shifted(grid_, theta, rhs, opt_); }

  private:
    Grid grid_;
    double delta_;
    SolverOptions opt_;
};

inline Field apply_A(const HelmholtzFilter& filter, const Field& f) { return filter.apply_A(f); }
inline Field apply_filter(const HelmholtzFilter& filter, const Field& f) { return filter.apply(f); }

}  // namespace helmreg
