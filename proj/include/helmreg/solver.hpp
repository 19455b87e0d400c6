#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "helmreg/grid.hpp"
#include "helmreg/stencil.hpp"

namespace helmreg {

/// Raised when the iterative path fails to reach its residual target.
class SolverError : public std::runtime_error {
  public:
    SolverError(const std::string& what, double residual, int iterations)
        : std::runtime_error(what + " (relative residual " + format_real(residual) + " after " +
                             std::to_string(iterations) + " iterations)"),
          residual_(residual),
          iterations_(iterations) {}

    [[nodiscard]] double residual() const { return residual_; }
    [[nodiscard]] int iterations() const { return iterations_; }

  private:
    double residual_;
    int iterations_;
};

struct SolverOptions {
    double rel_tol = 1e-12;
    /// 0 selects the default cap 20·(n+1), n the largest interval count.
    int max_iterations = 0;
};

namespace detail {

// Constant-coefficient tridiagonal elimination for (1 + 2t) x_i − t x_{i−1} − t x_{i+1} = b_i.
inline std::vector<double> thomas_constant(double diag, double off, std::span<const double> rhs) {
    const std::size_t m = rhs.size();
    std::vector<double> c(m), x(m);
    double denom = diag;
    c[0] = off / denom;
    x[0] = rhs[0] / denom;
    for (std::size_t i = 1; i < m; ++i) {
        denom = diag - off * c[i - 1];
        c[i] = off / denom;
        x[i] = (rhs[i] - off * x[i - 1]) / denom;
    }
    for (std::size_t i = m - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
    return x;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

inline std::vector<double> conjugate_gradient(const Grid& g, double theta, std::span<const double> rhs,
                                              const SolverOptions& opt) {
    const std::size_t m = rhs.size();
    const int cap = opt.max_iterations > 0 ? opt.max_iterations : 20 * (g.max_intervals() + 1);
    std::vector<double> x(m, 0.0), r(rhs.begin(), rhs.end()), p = r, ap(m);
    const double bnorm = std::sqrt(dot(rhs, rhs));
    if (bnorm == 0.0) return x;
    double rr = dot(r, r);
    int it = 0;
    for (; it < cap; ++it) {
        if (std::sqrt(rr) <= opt.rel_tol * bnorm) return x;
        neg_laplacian_into(g, p, ap);
        for (std::size_t k = 0; k < m; ++k) ap[k] = p[k] + theta * ap[k];
        const double step = rr / dot(p, ap);
        for (std::size_t k = 0; k < m; ++k) {
            x[k] += step * p[k];
            r[k] -= step * ap[k];
        }
        const double rr_next = dot(r, r);
        const double beta = rr_next / rr;
        rr = rr_next;
        for (std::size_t k = 0; k < m; ++k) p[k] = r[k] + beta * p[k];
    }
    if (std::sqrt(rr) <= opt.rel_tol * bnorm) return x;
    throw SolverError("conjugate gradient did not converge", std::sqrt(rr) / bnorm, it);
}

}  // namespace detail

/// Solves (I + θ(−Δʰ)) x = rhs.
///
/// 1D: direct tridiagonal elimination. 2D: matrix-free conjugate gradient, which is
/// valid because the operator is symmetric positive definite for θ ≥ 0.
inline Field solve_shifted(const Grid& grid, double theta, const Field& rhs, const SolverOptions& opt = {}) {
    require_same_grid(grid, rhs.grid());
    if (!(theta >= 0.0) || !std::isfinite(theta)) throw std::invalid_argument("shift θ must be finite and nonnegative");
    if (theta == 0.0) return rhs;
    if (grid.dim() == 1) {
        const double t = theta / (grid.h(0) * grid.h(0));
        return Field(grid, detail::thomas_constant(1.0 + 2.0 * t, -t, rhs.values()));
    }
    return Field(grid, detail::conjugate_gradient(grid, theta, rhs.values(), opt));
}

}  // namespace helmreg
