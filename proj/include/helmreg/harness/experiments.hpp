#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "helmreg/harness/config.hpp"
#include "helmreg/harness/noise.hpp"
#include "helmreg/harness/signals.hpp"
#include "helmreg/helmholtz_filter.hpp"
#include "helmreg/norms.hpp"
#include "helmreg/regularizers.hpp"
#include "helmreg/stopping.hpp"

namespace helmreg::harness {

/// ‖u − u_approx‖ / ‖u‖.
inline double relative_error(const Field& u_true, const Field& u_approx, Quadrature q = Quadrature::Trapezoid) {
    const double ref = l2_norm(u_true, q);
    if (!(ref > 0.0)) throw std::invalid_argument("relative error needs a nonzero true signal");
    return l2_norm(u_true - u_approx, q) / ref;
}

/// Raised by experiment drivers when a solve fails; names the offending parameters.
class ExperimentSolverError : public SolverError {
  public:
    ExperimentSolverError(const SolverError& e, const std::string& where)
        : SolverError(where + ": " + e.what(), e.residual(), e.iterations()) {}
};

// ---------------------------------------------------------------- comparison

struct ComparisonRow {
    Method method;
    double alpha;
    int J;
    double rel_error;
};

/// Noise-free sweep of every configured method over the α sweep, for each J.
/// Rows are ordered by J, then α (descending), then method.
inline std::vector<ComparisonRow> run_comparison(const ExperimentConfig& c) {
    const Grid grid = experiment_grid(c, c.n);
    const HelmholtzFilter filter(grid, resolve_delta(c, c.n));
    const Field u = gen_signal(c.signal, grid);
    const Field u_bar = filter.apply(u);
    const auto alphas = alpha_sweep(c);
    std::vector<ComparisonRow> rows;
    for (int J : c.J_list) {
        if (J < 0) throw std::invalid_argument("J must be nonnegative");
        for (double alpha : alphas)
            for (Method m : c.methods) {
                try {
                    const IterateTrace t = deconvolve(filter, u_bar, RegConfig{m, alpha, J});
                    rows.push_back({m, alpha, J, relative_error(u, t.final(), c.quadrature)});
                } catch (const SolverError& e) {
                    throw ExperimentSolverError(e, std::string(to_string(m)) + " alpha=" + format_real(alpha) +
                                                       " J=" + std::to_string(J));
                }
            }
    }
    return rows;
}

inline void write_comparison_csv(std::ostream& os, const std::vector<ComparisonRow>& rows, int J) {
    os << "method,alpha,J,rel_l2_error\n";
    for (const auto& r : rows)
        if (r.J == J)
            os << to_string(r.method) << ',' << format_real(r.alpha) << ',' << r.J << ',' << format_real(r.rel_error)
               << '\n';
}

// ---------------------------------------------------------------- rates

/// rate_k = log(e_{k−1}/e_k) / log(n_k/n_{k−1}); log₂ of the error ratio on doubling grids.
inline std::vector<std::optional<double>> convergence_rates(const std::vector<int>& ns, const std::vector<double>& errs) {
    if (ns.size() != errs.size()) throw std::invalid_argument("refinement and error lists differ in length");
    std::vector<std::optional<double>> out(ns.size());
    for (std::size_t k = 1; k < ns.size(); ++k)
        out[k] = std::log(errs[k - 1] / errs[k]) / std::log(static_cast<double>(ns[k]) / ns[k - 1]);
    return out;
}

struct RateRow {
    Method method;
    int J;
    int n;
    double delta;
    double alpha;
    double l2_error;
    std::optional<double> l2_rate;
    double h1_error;
    std::optional<double> h1_rate;
};

inline void check_doubling(const std::vector<int>& ns) {
    if (ns.empty()) throw std::invalid_argument("refinement list is empty");
    for (std::size_t k = 1; k < ns.size(); ++k)
        if (ns[k] != 2 * ns[k - 1]) throw std::invalid_argument("refinement list must double strictly");
}

/// Noise-free refinement study. Rows are grouped by case (config order), then n ascending.
inline std::vector<RateRow> run_rates(const ExperimentConfig& c) {
    const std::vector<int> ns = c.n_list.empty() ? std::vector<int>{c.n} : c.n_list;
    check_doubling(ns);
    const std::vector<MethodCase> cases =
        c.cases.empty() ? std::vector<MethodCase>{{Method::MITLAR, 0}, {Method::MITLAR, 1}, {Method::TL, 0}, {Method::ITL, 1}}
                        : c.cases;
    std::vector<std::vector<RateRow>> per_case(cases.size());
    for (int n : ns) {
        const Grid grid = experiment_grid(c, n);
        const double delta = resolve_delta(c, n);
        const double alpha = resolve_alpha(c, n);
        const HelmholtzFilter filter(grid, delta);
        const Field u = gen_signal(c.signal, grid);
        Field u_bar;
        try {
            u_bar = filter.apply(u);
        } catch (const SolverError& e) {
            throw ExperimentSolverError(e, "filter n=" + std::to_string(n));
        }
        for (std::size_t k = 0; k < cases.size(); ++k) {
            const auto [m, J] = cases[k];
            try {
                const Field e = u - deconvolve(filter, u_bar, RegConfig{m, alpha, J}).final();
                per_case[k].push_back({m, J, n, delta, alpha, l2_norm(e, c.quadrature), {}, h1_seminorm(e), {}});
            } catch (const SolverError& err) {
                throw ExperimentSolverError(err, std::string(to_string(m)) + " J=" + std::to_string(J) +
                                                     " n=" + std::to_string(n));
            }
        }
    }
    std::vector<RateRow> rows;
    for (auto& group : per_case) {
        std::vector<double> l2, h1;
        for (const auto& r : group) {
            l2.push_back(r.l2_error);
            h1.push_back(r.h1_error);
        }
        const auto l2r = convergence_rates(ns, l2), h1r = convergence_rates(ns, h1);
        for (std::size_t i = 0; i < group.size(); ++i) {
            group[i].l2_rate = l2r[i];
            group[i].h1_rate = h1r[i];
            rows.push_back(group[i]);
        }
    }
    return rows;
}

/// Rows of one (method, J) case.
inline void write_rates_csv(std::ostream& os, const std::vector<RateRow>& rows, Method m, int J) {
    os << "n,l2_error,l2_rate,h1_error,h1_rate\n";
    auto opt = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string(); };
    for (const auto& r : rows)
        if (r.method == m && r.J == J)
            os << r.n << ',' << format_real(r.l2_error) << ',' << opt(r.l2_rate) << ',' << format_real(r.h1_error) << ','
               << opt(r.h1_rate) << '\n';
}

// ---------------------------------------------------------------- stopping

struct StoppingSample {
    std::uint64_t seed;
    int stop_index;
    StopReason reason;
    int energy_argmin;
    double energy_at_stop;
    double energy_min;
    double eps0;
};

struct StoppingResult {
    double delta = 0.0;
    double alpha = 0.0;
    StoppedRun first;   ///< full trace of the base seed
    double first_eps0 = 0.0;
    std::vector<StoppingSample> samples;

    /// Count of runs per stop index.
    [[nodiscard]] std::map<int, int> histogram() const {
        std::map<int, int> h;
        for (const auto& s : samples) ++h[s.stop_index];
        return h;
    }
    [[nodiscard]] double median_stop_index() const {
        std::vector<int> v;
        for (const auto& s : samples) v.push_back(s.stop_index);
        std::sort(v.begin(), v.end());
        const std::size_t m = v.size();
        return m % 2 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
    }
};

/// Noisy stopping study: ū = Gu − ε with ‖ε‖ = level·‖Gu‖, Mitlar recorded to j_max.
/// Run i uses seed + i.
inline StoppingResult run_stopping(const ExperimentConfig& c) {
    if (c.mc_runs < 1) throw std::invalid_argument("mc_runs must be at least 1");
    const Grid grid = experiment_grid(c, c.n);
    StoppingResult out;
    out.delta = resolve_delta(c, c.n);
    out.alpha = resolve_alpha(c, c.n);
    const HelmholtzFilter filter(grid, out.delta);
    const Field u = gen_signal(c.signal, grid);
    Field gu;
    try {
        gu = filter.apply(u);
    } catch (const SolverError& e) {
        throw ExperimentSolverError(e, "filter");
    }
    for (int i = 0; i < c.mc_runs; ++i) {
        const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(i);
        const NoiseModel noise = gen_noise(seed, c.level, gu);
        const Field u_bar = gu - noise.epsilon;
        StoppingOptions opt{StopMode::RecordOnly, true, noise.epsilon};
        StoppedRun run;
        try {
            run = run_mitlar_with_stopping(filter, u_bar, out.alpha, noise.eps0, c.j_max, opt);
        } catch (const SolverError& e) {
            throw ExperimentSolverError(e, "stopping seed=" + std::to_string(seed));
        }
        const auto it = std::min_element(run.energies.begin(), run.energies.end());
        out.samples.push_back({seed, run.stop_index, run.reason, static_cast<int>(it - run.energies.begin()),
                               run.energies[static_cast<std::size_t>(run.stop_index)], *it, noise.eps0});
        if (i == 0) {
            out.first = std::move(run);
            out.first_eps0 = noise.eps0;
        }
    }
    return out;
}

inline void write_stopping_samples_csv(std::ostream& os, const StoppingResult& r) {
    os << "seed,stop_index,reason,energy_argmin,energy_at_stop,energy_min,eps0\n";
    for (const auto& s : r.samples)
        os << s.seed << ',' << s.stop_index << ',' << to_string(s.reason) << ',' << s.energy_argmin << ','
           << format_real(s.energy_at_stop) << ',' << format_real(s.energy_min) << ',' << format_real(s.eps0) << '\n';
}

inline void write_stopping_histogram_csv(std::ostream& os, const StoppingResult& r) {
    os << "stop_index,count\n";
    for (const auto& [j, count] : r.histogram()) os << j << ',' << count << '\n';
}

// ---------------------------------------------------------------- filter

struct FilterResult {
    double delta = 0.0;
    Field u;
    Field u_bar;
    /// ‖Aū − u‖ / ‖u‖.
    double roundtrip_residual = 0.0;
};

inline FilterResult run_filter(const ExperimentConfig& c) {
    const Grid grid = experiment_grid(c, c.n);
    FilterResult r;
    r.delta = resolve_delta(c, c.n);
    const HelmholtzFilter filter(grid, r.delta);
    r.u = gen_signal(c.signal, grid);
    try {
        r.u_bar = filter.apply(r.u);
    } catch (const SolverError& e) {
        throw ExperimentSolverError(e, "filter");
    }
    const double ref = l2_norm(r.u, c.quadrature);
    r.roundtrip_residual = ref > 0.0 ? l2_norm(filter.apply_A(r.u_bar) - r.u, c.quadrature) / ref : 0.0;
    return r;
}

}  // namespace helmreg::harness
