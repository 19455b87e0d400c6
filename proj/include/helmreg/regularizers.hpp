#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "helmreg/grid.hpp"
#include "helmreg/helmholtz_filter.hpp"
#include "helmreg/norms.hpp"
#include "helmreg/stencil.hpp"

namespace helmreg {

/// TL: Tikhonov-Lavrentiev. ITL: iterated TL. MTL: modified TL (Mitlar with J = 0).
/// MITLAR: modified iterated Tikhonov-Lavrentiev.
enum class Method { TL, ITL, MTL, MITLAR };

inline std::string_view to_string(Method m) {
    switch (m) {
        case Method::TL: return "TL";
        case Method::ITL: return "ITL";
        case Method::MTL: return "MTL";
        case Method::MITLAR: return "MITLAR";
    }
    return "?";
}

inline Method parse_method(std::string_view s) {
    if (s == "TL" || s == "tl") return Method::TL;
    if (s == "ITL" || s == "itl") return Method::ITL;
    if (s == "MTL" || s == "mtl") return Method::MTL;
    if (s == "MITLAR" || s == "mitlar") return Method::MITLAR;
    throw std::invalid_argument("unknown method '" + std::string(s) + "'");
}

struct RegConfig {
    Method method = Method::MITLAR;
    double alpha = 0.1;
    int J = 0;

    /// Throws on α outside (0, 1] or J < 0.
    void validate() const {
        if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("α must lie in (0, 1]");
        if (J < 0) throw std::invalid_argument("J must be nonnegative");
    }
    /// Energy descent of the modified iteration is only guaranteed for α ≤ ½.
    [[nodiscard]] bool outside_descent_range() const { return alpha > 0.5; }
    /// Number of updates actually performed (TL and MTL never iterate).
    [[nodiscard]] int effective_updates() const {
        return (method == Method::TL || method == Method::MTL) ? 0 : J;
    }
};

/// Iterates u₀..u_J and update norms ‖u_j − u_{j−1}‖ for j = 1..J.
struct IterateTrace {
    std::vector<Field> iterates;
    std::vector<double> update_norms;

    [[nodiscard]] const Field& final() const { return iterates.back(); }
    [[nodiscard]] int updates() const { return static_cast<int>(iterates.size()) - 1; }
};

namespace detail {

// Solves (I + αA) x = rhs, i.e. (1+α)(I + θ(−Δʰ)) x = rhs with θ = αδ²/(1+α).
inline Field solve_lavrentiev(const HelmholtzFilter& filter, double alpha, Field rhs) {
    rhs *= 1.0 / (1.0 + alpha);
    return filter.solve(alpha * filter.delta2() / (1.0 + alpha), rhs);
}

inline void check_inputs(const HelmholtzFilter& filter, const Field& u_bar, int J) {
    require_same_grid(filter.grid(), u_bar.grid());
    if (J < 0) throw std::invalid_argument("J must be nonnegative");
}

}  // namespace detail

/// (G + αI) u₀ = ū, solved in the form (I + αA) u₀ = Aū.
inline Field deconvolve_tl(const HelmholtzFilter& filter, const Field& u_bar, double alpha) {
    detail::check_inputs(filter, u_bar, 0);
    if (!(alpha > 0.0)) throw std::invalid_argument("α must be positive");
    return detail::solve_lavrentiev(filter, alpha, filter.apply_A(u_bar));
}

/// Iterated Tikhonov-Lavrentiev: (G + αI)(u_j − u_{j−1}) = ū − G u_{j−1},
/// solved as (I + αA)(u_j − u_{j−1}) = Aū − u_{j−1}.
inline IterateTrace deconvolve_itl(const HelmholtzFilter& filter, const Field& u_bar, double alpha, int J) {
    detail::check_inputs(filter, u_bar, J);
    if (!(alpha > 0.0)) throw std::invalid_argument("α must be positive");
    const Field a_ubar = filter.apply_A(u_bar);
    IterateTrace trace;
    trace.iterates.push_back(detail::solve_lavrentiev(filter, alpha, a_ubar));
    for (int j = 1; j <= J; ++j) {
        const Field& prev = trace.iterates.back();
        Field d = detail::solve_lavrentiev(filter, alpha, a_ubar - prev);
        trace.update_norms.push_back(l2_norm(d));
        trace.iterates.push_back(prev + d);
    }
    return trace;
}

/// Modified iterated Tikhonov-Lavrentiev.
///
/// [(1−α)G + αI] u₀ = ū and [(1−α)G + αI](u_j − u_{j−1}) = ū − G u_{j−1}. Multiplying
/// through by A turns every step into one shifted solve with θ = αδ²:
///   (I + αδ²(−Δʰ)) u₀ = Aū,   (I + αδ²(−Δʰ))(u_j − u_{j−1}) = Aū − u_{j−1}.
/// α = 0 is accepted and gives exact inversion u₀ = Aū.
inline IterateTrace deconvolve_mitlar(const HelmholtzFilter& filter, const Field& u_bar, double alpha, int J) {
    detail::check_inputs(filter, u_bar, J);
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("α must lie in [0, 1]");
    const double theta = alpha * filter.delta2();
    const Field a_ubar = filter.apply_A(u_bar);
    IterateTrace trace;
    trace.iterates.push_back(filter.solve(theta, a_ubar));
    for (int j = 1; j <= J; ++j) {
        const Field& prev = trace.iterates.back();
        Field d = filter.solve(theta, a_ubar - prev);
        trace.update_norms.push_back(l2_norm(d));
        trace.iterates.push_back(prev + d);
    }
    return trace;
}

inline Field deconvolve_mtl(const HelmholtzFilter& filter, const Field& u_bar, double alpha) {
    return deconvolve_mitlar(filter, u_bar, alpha, 0).iterates.front();
}

/// Runs the configured method; TL and MTL yield a one-entry trace.
inline IterateTrace deconvolve(const HelmholtzFilter& filter, const Field& u_bar, const RegConfig& cfg) {
    switch (cfg.method) {
        case Method::TL: return IterateTrace{{deconvolve_tl(filter, u_bar, cfg.alpha)}, {}};
        case Method::ITL: return deconvolve_itl(filter, u_bar, cfg.alpha, cfg.J);
        case Method::MTL: return IterateTrace{{deconvolve_mtl(filter, u_bar, cfg.alpha)}, {}};
        case Method::MITLAR: return deconvolve_mitlar(filter, u_bar, cfg.alpha, cfg.J);
    }
    throw std::logic_error("unhandled method");
}

/// (αδ²)^{J+1} ‖(−Δʰ)^{J+1} u‖.
///
/// The repeated stencil grows like h^{−2(J+1)} on rough data, so the bound is only
/// informative for band-limited u.
inline double mitlar_noise_free_bound(const HelmholtzFilter& filter, const Field& u, double alpha, int J) {
    require_same_grid(filter.grid(), u.grid());
    if (J < 0) throw std::invalid_argument("J must be nonnegative");
    if (alpha == 0.0) return 0.0;
    const double factor = std::pow(alpha * filter.delta2(), J + 1);
    return factor * l2_norm(neg_laplacian_power(u, J + 1));
}

/// Noise-free bound plus (J+1)ε₀/α.
inline double mitlar_noisy_bound(const HelmholtzFilter& filter, const Field& u, double alpha, int J, double eps0) {
    if (!(alpha > 0.0)) throw std::invalid_argument("α must be positive for the noisy bound");
    if (!(eps0 >= 0.0)) throw std::invalid_argument("ε₀ must be nonnegative");
    return mitlar_noise_free_bound(filter, u, alpha, J) + (J + 1) * eps0 / alpha;
}

}  // namespace helmreg
