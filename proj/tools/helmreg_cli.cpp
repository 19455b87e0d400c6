// Command-line driver for the deconvolution experiments.
//
//   helmreg compare  [--preset compare1d]   α sweep of TL/ITL/MTL/MITLAR, one CSV per J
//   helmreg rates    [--preset rates2d]     refinement study, one CSV per (method, J)
//   helmreg stopping [--preset stopping1d]  noisy Mitlar with the stopping rule
//   helmreg filter   [--preset stopping1d]  ū = Gu and the A-roundtrip residual
//
// Exit status: 0 success, 1 configuration error, 2 solver failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "helmreg/harness/config.hpp"
#include "helmreg/harness/experiments.hpp"

namespace hh = helmreg::harness;
namespace fs = std::filesystem;

namespace {

struct CommonFlags {
    std::string config_file;
    std::string preset;
    std::string seed, out, quadrature, alpha, delta, J, n, level;
    std::vector<std::string> sets;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_file, "Flat key = value config file");
    cmd->add_option("--preset", f.preset, "Preset: stopping1d | compare1d | rates2d | custom");
    cmd->add_option("--seed", f.seed, "RNG seed");
    cmd->add_option("--out", f.out, "Output directory");
    cmd->add_option("--quadrature", f.quadrature, "trapezoid | simpson");
    cmd->add_option("--alpha", f.alpha, "Regularization parameter (or power-law coefficient)");
    cmd->add_option("--delta", f.delta, "Filter radius (or multiplier / coefficient per delta_rule)");
    cmd->add_option("--J", f.J, "Comma-separated update counts");
    cmd->add_option("--n", f.n, "Interval count per axis");
    cmd->add_option("--level", f.level, "Relative noise level");
    cmd->add_option("--set", f.sets, "Any config key as key=value (repeatable)");
}

hh::Settings collect(const CommonFlags& f) {
    hh::Settings s;
    if (!f.config_file.empty()) s = hh::read_settings_file(f.config_file);
    auto push = [&](const char* key, const std::string& v) {
        if (!v.empty()) s.emplace_back(key, v);
    };
    for (const auto& kv : f.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
        s.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
    }
    push("seed", f.seed);
    push("out", f.out);
    push("quadrature", f.quadrature);
    push("alpha", f.alpha);
    push("delta", f.delta);
    push("J", f.J);
    push("n", f.n);
    push("level", f.level);
    return s;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << content;
}

template <class Fn>
std::string render(Fn&& fn) {
    std::ostringstream os;
    fn(os);
    return os.str();
}

void emit_summary(const fs::path& dir, const std::string& name, const std::string& text) {
    std::cout << text;
    write_file(dir / ("summary_" + name + ".txt"), text);
}

std::string fmt(double v, const char* spec = "%.6g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

void cmd_compare(const hh::ExperimentConfig& c, const fs::path& dir) {
    const auto rows = hh::run_comparison(c);
    std::ostringstream sum;
    sum << "comparison: n=" << c.n << " delta=" << fmt(hh::resolve_delta(c, c.n)) << " alphas=" << c.alpha_count
        << "\n";
    for (int J : c.J_list) {
        write_file(dir / ("compare_J" + std::to_string(J) + ".csv"),
                   render([&](std::ostream& os) { hh::write_comparison_csv(os, rows, J); }));
        sum << "J=" << J << "\n  " << "alpha";
        for (auto m : c.methods) sum << "\t" << helmreg::to_string(m);
        sum << "\n";
        const std::size_t per_alpha = c.methods.size();
        for (std::size_t i = 0; i < rows.size(); i += per_alpha) {
            if (rows[i].J != J) continue;
            sum << "  " << fmt(rows[i].alpha, "%.4g");
            for (std::size_t k = 0; k < per_alpha; ++k) sum << "\t" << fmt(rows[i + k].rel_error, "%.4e");
            sum << "\n";
        }
    }
    emit_summary(dir, "compare", sum.str());
}

void cmd_rates(const hh::ExperimentConfig& c, const fs::path& dir) {
    const auto rows = hh::run_rates(c);
    std::ostringstream sum;
    sum << "convergence rates\n";
    std::vector<std::pair<helmreg::Method, int>> seen;
    for (const auto& r : rows) {
        if (seen.empty() || seen.back() != std::pair{r.method, r.J}) {
            seen.emplace_back(r.method, r.J);
            write_file(dir / ("rates_" + std::string(helmreg::to_string(r.method)) + "_J" + std::to_string(r.J) + ".csv"),
                       render([&](std::ostream& os) { hh::write_rates_csv(os, rows, r.method, r.J); }));
            sum << helmreg::to_string(r.method) << " J=" << r.J << "\n  n\tL2 error\trate\tH1 error\trate\n";
        }
        sum << "  " << r.n << "\t" << fmt(r.l2_error, "%.5e") << "\t" << (r.l2_rate ? fmt(*r.l2_rate, "%.4f") : "")
            << "\t" << fmt(r.h1_error, "%.5e") << "\t" << (r.h1_rate ? fmt(*r.h1_rate, "%.4f") : "") << "\n";
    }
    emit_summary(dir, "rates", sum.str());
}

void cmd_stopping(const hh::ExperimentConfig& c, const fs::path& dir) {
    const auto res = hh::run_stopping(c);
    const helmreg::RunMetadata meta{res.alpha, res.first_eps0, res.delta, c.n, c.seed};
    write_file(dir / "stopping_trace.csv",
               render([&](std::ostream& os) { helmreg::write_stopped_run_csv(os, res.first, meta); }));
    write_file(dir / "stopping_samples.csv", render([&](std::ostream& os) { hh::write_stopping_samples_csv(os, res); }));
    write_file(dir / "stopping_histogram.csv",
               render([&](std::ostream& os) { hh::write_stopping_histogram_csv(os, res); }));
    std::ostringstream sum;
    sum << "stopping: n=" << c.n << " delta=" << fmt(res.delta) << " alpha=" << fmt(res.alpha)
        << " level=" << fmt(c.level) << " j_max=" << c.j_max << " runs=" << c.mc_runs << "\n";
    sum << "  seed " << c.seed << ": J*=" << res.first.stop_index << " (" << helmreg::to_string(res.first.reason)
        << "), eps0=" << fmt(res.first_eps0) << "\n";
    if (res.first.alpha_outside_descent_range) sum << "  warning: alpha > 1/2, descent is not guaranteed\n";
    sum << "  median J*=" << fmt(res.median_stop_index()) << "\n  histogram:";
    for (const auto& [j, count] : res.histogram()) sum << " " << j << ":" << count;
    sum << "\n";
    emit_summary(dir, "stopping", sum.str());
}

void cmd_filter(const hh::ExperimentConfig& c, const fs::path& dir) {
    const auto res = hh::run_filter(c);
    write_file(dir / "filter_ubar.csv", render([&](std::ostream& os) { helmreg::write_field_csv(os, res.u_bar); }));
    std::ostringstream sum;
    sum << "filter: n=" << c.n << " delta=" << fmt(res.delta) << "\n"
        << "  |u|=" << fmt(helmreg::l2_norm(res.u, c.quadrature), "%.10g")
        << " |Gu|=" << fmt(helmreg::l2_norm(res.u_bar, c.quadrature), "%.10g") << "\n"
        << "  A-roundtrip relative residual=" << fmt(res.roundtrip_residual, "%.3e") << "\n";
    emit_summary(dir, "filter", sum.str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Helmholtz-filter deconvolution experiments"};
    app.require_subcommand(0, 1);

    struct Sub {
        const char* name;
        const char* help;
        const char* preset;
        void (*run)(const hh::ExperimentConfig&, const fs::path&);
        CommonFlags flags;
        CLI::App* cmd = nullptr;
    };
    std::vector<Sub> subs{
        {"compare", "Four-method relative-error sweep over alpha", "compare1d", cmd_compare, {}},
        {"rates", "Grid refinement convergence rates", "rates2d", cmd_rates, {}},
        {"stopping", "Noisy Mitlar run with the stopping criterion", "stopping1d", cmd_stopping, {}},
        {"filter", "Apply the Helmholtz filter and check the inverse", "stopping1d", cmd_filter, {}},
    };
    std::string keys;
    for (const auto& k : hh::config_keys()) keys += (keys.empty() ? "" : ", ") + k;
    for (auto& s : subs) {
        s.cmd = app.add_subcommand(s.name, s.help);
        add_common(s.cmd, s.flags);
        s.cmd->footer(std::string("\nDefault preset: ") + s.preset + ". Every key has a preset default; none is required.\n" +
                      "Config keys (file lines 'key = value' or --set key=value; flags override both):\n  " + keys +
                      "\nUnknown keys are errors.");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    }

    for (auto& s : subs) {
        if (!s.cmd->parsed()) continue;
        hh::ExperimentConfig cfg;
        try {
            cfg = hh::build_config(collect(s.flags), s.preset, s.flags.preset);
            fs::create_directories(cfg.out_dir);
        } catch (const std::exception& e) {
            std::cerr << "config error: " << e.what() << "\n\n" << s.cmd->help();
            return 1;
        }
        try {
            s.run(cfg, cfg.out_dir);
        } catch (const helmreg::SolverError& e) {
            std::cerr << "solver failure: " << e.what() << "\n";
            return 2;
        } catch (const std::invalid_argument& e) {
            std::cerr << "config error: " << e.what() << "\n";
            return 1;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
        return 0;
    }
    std::cerr << app.help();
    return 1;
}
