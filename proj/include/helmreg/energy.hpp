#pragma once

#include "helmreg/grid.hpp"
#include "helmreg/helmholtz_filter.hpp"
#include "helmreg/norms.hpp"

namespace helmreg {

// Energies always use the trapezoid inner product: G is self-adjoint under it, which the
// descent identities depend on.

/// E₀(v) = ½(Gv, v) − (ū, v). One filter solve.
inline double energy_noise_free(const HelmholtzFilter& filter, const Field& v, const Field& u_bar) {
    require_same_grid(filter.grid(), v.grid());
    return 0.5 * inner_product(filter.apply(v), v) - inner_product(u_bar, v);
}

/// E_ε(v) = ½(Gv, v) − (ū + ε, v).
inline double energy_noisy(const HelmholtzFilter& filter, const Field& v, const Field& u_bar, const Field& epsilon) {
    return energy_noise_free(filter, v, u_bar) - inner_product(epsilon, v);
}

/// ([(½ − α)G + αI] d, d) with d = u_next − u_j; equals E₀(u_j) − E₀(u_next) along Mitlar iterates.
inline double descent_gap(const HelmholtzFilter& filter, const Field& u_j, const Field& u_next, double alpha) {
    require_same_grid(filter.grid(), u_j.grid());
    const Field d = u_next - u_j;
    return (0.5 - alpha) * inner_product(filter.apply(d), d) + alpha * inner_product(d, d);
}

}  // namespace helmreg
