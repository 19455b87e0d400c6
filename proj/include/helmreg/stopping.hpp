#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "helmreg/energy.hpp"
#include "helmreg/grid.hpp"
#include "helmreg/helmholtz_filter.hpp"
#include "helmreg/norms.hpp"
#include "helmreg/regularizers.hpp"

namespace helmreg {

enum class StopReason { Criterion, MaxIterations, ZeroUpdate };

inline std::string_view to_string(StopReason r) {
    switch (r) {
        case StopReason::Criterion: return "criterion";
        case StopReason::MaxIterations: return "max_iterations";
        case StopReason::ZeroUpdate: return "zero_update";
    }
    return "?";
}

/// Halt discards the first rejected candidate and ends the trace there. RecordOnly keeps
/// iterating to j_max and only annotates the stopping index.
enum class StopMode { Halt, RecordOnly };

/// Continue while ε₀/‖u_{j+1} − u_j‖ ≤ α. A zero update always stops.
inline bool stopping_should_continue(double alpha, double eps0, double update_norm) {
    if (!(alpha > 0.0)) throw std::invalid_argument("α must be positive");
    if (!(eps0 >= 0.0)) throw std::invalid_argument("ε₀ must be nonnegative");
    if (!(update_norm > 0.0)) return false;
    return eps0 / update_norm <= alpha;
}

/// Realized noise together with its known bound. The data model is ū = G u − ε.
struct NoiseModel {
    Field epsilon;
    double eps0 = 0.0;
    double level = 0.0;
};

struct StoppingOptions {
    StopMode mode = StopMode::Halt;
    /// Record E_ε(u_j) for every kept iterate; costs one extra filter solve per step.
    bool record_energy = false;
    /// Noise used in E_ε. Without it E₀ is recorded.
    std::optional<Field> epsilon;
};

struct StoppedRun {
    IterateTrace trace;
    int stop_index = 0;
    StopReason reason = StopReason::MaxIterations;
    std::vector<double> energies;      ///< one per kept iterate when recorded
    std::vector<bool> continue_flags;  ///< criterion outcome for each kept update j = 1..
    /// Norm of the candidate discarded in halt mode, NaN otherwise.
    double rejected_update_norm = std::numeric_limits<double>::quiet_NaN();
    bool alpha_outside_descent_range = false;
};

/// Mitlar driven by the noise-aware stopping rule.
///
/// Each candidate u_j is computed before the rule is tested on ‖u_j − u_{j−1}‖; the stop
/// index J* is the last accepted iterate.
inline StoppedRun run_mitlar_with_stopping(const HelmholtzFilter& filter, const Field& u_bar, double alpha,
                                           double eps0, int j_max, const StoppingOptions& opt = {}) {
    require_same_grid(filter.grid(), u_bar.grid());
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("α must lie in (0, 1]");
    if (!(eps0 >= 0.0)) throw std::invalid_argument("ε₀ must be nonnegative");
    if (j_max < 1) throw std::invalid_argument("j_max must be at least 1");
    if (opt.epsilon) require_same_grid(filter.grid(), opt.epsilon->grid());

    StoppedRun run;
    run.alpha_outside_descent_range = alpha > 0.5;
    const Field zero(filter.grid());
    const Field& eps = opt.epsilon ? *opt.epsilon : zero;
    auto record = [&](const Field& u) {
        if (opt.record_energy) run.energies.push_back(energy_noisy(filter, u, u_bar, eps));
    };

    const double theta = alpha * filter.delta2();
    const Field a_ubar = filter.apply_A(u_bar);
    run.trace.iterates.push_back(filter.solve(theta, a_ubar));
    record(run.trace.iterates.back());

    bool stopped = false;
    for (int j = 1; j <= j_max; ++j) {
        const Field& prev = run.trace.iterates.back();
        Field d = filter.solve(theta, a_ubar - prev);
        const double norm = l2_norm(d);
        const bool go = stopping_should_continue(alpha, eps0, norm);
        if (!go && !stopped) {
            stopped = true;
            run.stop_index = j - 1;
            run.reason = norm > 0.0 ? StopReason::Criterion : StopReason::ZeroUpdate;
            if (opt.mode == StopMode::Halt) {
                run.rejected_update_norm = norm;
                return run;
            }
        }
        run.trace.update_norms.push_back(norm);
        run.continue_flags.push_back(go);
        run.trace.iterates.push_back(prev + d);
        record(run.trace.iterates.back());
    }
    if (!stopped) {
        run.stop_index = j_max;
        run.reason = StopReason::MaxIterations;
    }
    return run;
}

using LinearFieldMap = std::function<Field(const Field&)>;

/// ũ = u_prev + P(u_curr − u_prev). P must be idempotent on the update (checked to 1e−10).
inline Field projected_update(const Field& u_prev, const Field& u_curr, const LinearFieldMap& P) {
    u_prev.check_same(u_curr);
    const Field d = u_curr - u_prev;
    const Field pd = P(d);
    pd.check_same(d);
    const Field ppd = P(pd);
    if (l2_norm(ppd - pd) > 1e-10 * l2_norm(d))
        throw std::invalid_argument("projection is not idempotent on the supplied update");
    return u_prev + pd;
}

struct RunMetadata {
    double alpha = 0.0;
    double eps0 = 0.0;
    double delta = 0.0;
    int n = 0;
    std::uint64_t seed = 0;
};

/// One metadata comment line, a header, then one row per kept iterate j = 0..
/// Row 0 has no update norm; energy is blank when it was not recorded.
inline void write_stopped_run_csv(std::ostream& os, const StoppedRun& run, const RunMetadata& meta) {
    os << "# alpha=" << format_real(meta.alpha) << ",eps0=" << format_real(meta.eps0)
       << ",delta=" << format_real(meta.delta) << ",n=" << meta.n << ",seed=" << meta.seed
       << ",J*=" << run.stop_index << ",reason=" << to_string(run.reason) << '\n';
    os << "j,update_norm,energy_noisy,continue_flag\n";
    for (std::size_t j = 0; j < run.trace.iterates.size(); ++j) {
        os << j << ',';
        if (j > 0) os << format_real(run.trace.update_norms[j - 1]);
        os << ',';
        if (j < run.energies.size()) os << format_real(run.energies[j]);
        os << ',';
        if (j > 0) os << (run.continue_flags[j - 1] ? 1 : 0);
        os << '\n';
    }
}

}  // namespace helmreg
