#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "helmreg/harness/signals.hpp"
#include "helmreg/norms.hpp"
#include "helmreg/regularizers.hpp"

namespace helmreg::harness {

/// Absolute: δ = c. MultipleOfH: δ = c·h. PowerLaw: δ = c·(2π/n)^p.
enum class ScaleRule { Absolute, MultipleOfH, PowerLaw };

struct MethodCase {
    Method method;
    int J;
};

struct ExperimentConfig {
    std::string preset = "custom";
    SignalSpec signal;
    double domain_lo = 0.0;
    double domain_hi = 2.0;
    int n = 1000;
    std::vector<int> n_list;

    ScaleRule delta_rule = ScaleRule::Absolute;
    double delta = 0.01;
    double delta_exponent = 0.25;

    ScaleRule alpha_rule = ScaleRule::Absolute;
    double alpha = 0.1;
    double alpha_exponent = 0.5;
    double alpha_max = 1.0;
    double alpha_min = 1e-3;
    int alpha_count = 25;

    std::vector<int> J_list{1, 2, 3};
    std::vector<Method> methods{Method::TL, Method::ITL, Method::MTL, Method::MITLAR};
    std::vector<MethodCase> cases;

    double level = 0.0;
    std::uint64_t seed = 0;
    int j_max = 20;
    int mc_runs = 1;
    Quadrature quadrature = Quadrature::Trapezoid;
    std::string out_dir = ".";
};

/// Configuration for a named preset; "custom" leaves every field at its default.
inline ExperimentConfig preset_config(std::string_view name) {
    ExperimentConfig c;
    c.preset = std::string(name);
    if (name == "custom") {
        c.signal = SignalSpec{};
        return c;
    }
    c.signal = signal_preset(name);
    if (name == "stopping1d") {
        c.n = 1000;
        c.delta_rule = ScaleRule::MultipleOfH;
        c.delta = 6.0;
        c.alpha = 0.1;
        c.level = 0.01;
        c.j_max = 20;
    } else if (name == "compare1d") {
        c.n = 1000;
        c.delta = 0.01;
    } else if (name == "rates2d") {
        c.n = 60;
        c.n_list = {60, 120, 240, 480};
        c.delta_rule = ScaleRule::PowerLaw;
        c.delta = 0.1;
        c.delta_exponent = 0.25;
        c.alpha_rule = ScaleRule::PowerLaw;
        c.alpha = 0.1;
        c.alpha_exponent = 0.5;
        c.cases = {{Method::MITLAR, 0}, {Method::MITLAR, 1}, {Method::TL, 0}, {Method::ITL, 1}};
    }
    return c;
}

namespace detail {

inline std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const auto end = s.find(sep, pos);
        std::string item = trim(s.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
        if (!item.empty()) out.push_back(std::move(item));
        if (end == std::string_view::npos) break;
        pos = end + 1;
    }
    return out;
}

inline double to_real(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != v.size() || v.empty() || !std::isfinite(x))
        throw std::invalid_argument("key '" + key + "': '" + v + "' is not a real number");
    return x;
}

template <class Int>
Int to_int(const std::string& key, const std::string& v) {
    Int x{};
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc{} || p != v.data() + v.size() || v.empty())
        throw std::invalid_argument("key '" + key + "': '" + v + "' is not an integer");
    return x;
}

inline ScaleRule to_rule(const std::string& key, const std::string& v) {
    if (v == "absolute") return ScaleRule::Absolute;
    if (v == "multiple_of_h") return ScaleRule::MultipleOfH;
    if (v == "power_law") return ScaleRule::PowerLaw;
    throw std::invalid_argument("key '" + key + "': expected absolute, multiple_of_h or power_law");
}

}  // namespace detail

/// Keys accepted in config files and as overrides.
inline const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys{
        "preset",    "dim",        "terms",     "domain_lo",      "domain_hi",  "n",         "n_list",
        "delta_rule", "delta",     "delta_exponent", "alpha_rule", "alpha",    "alpha_exponent", "alpha_max",
        "alpha_min", "alpha_count", "J",        "methods",        "cases",      "level",     "seed",
        "j_max",     "mc_runs",    "quadrature", "out"};
    return keys;
}

/// Applies one key = value setting. Unknown keys and malformed values throw.
/// "preset" is not handled here; it selects the starting configuration.
inline void apply_setting(ExperimentConfig& c, const std::string& key, const std::string& raw) {
    using namespace detail;
    const std::string v = trim(raw);
    if (key == "dim") {
        c.signal.dim = to_int<int>(key, v);
        if (c.signal.dim != 1 && c.signal.dim != 2) throw std::invalid_argument("dim must be 1 or 2");
    } else if (key == "terms") {
        c.signal.name = "custom";
        c.signal.terms = parse_terms(v);
    } else if (key == "domain_lo") {
        c.domain_lo = to_real(key, v);
    } else if (key == "domain_hi") {
        c.domain_hi = to_real(key, v);
    } else if (key == "n") {
        c.n = to_int<int>(key, v);
    } else if (key == "n_list") {
        c.n_list.clear();
        for (const auto& s : split(v, ',')) c.n_list.push_back(to_int<int>(key, s));
    } else if (key == "delta_rule") {
        c.delta_rule = to_rule(key, v);
    } else if (key == "delta") {
        c.delta = to_real(key, v);
    } else if (key == "delta_exponent") {
        c.delta_exponent = to_real(key, v);
    } else if (key == "alpha_rule") {
        c.alpha_rule = to_rule(key, v);
        if (c.alpha_rule == ScaleRule::MultipleOfH) throw std::invalid_argument("alpha_rule cannot be multiple_of_h");
    } else if (key == "alpha") {
        c.alpha = to_real(key, v);
    } else if (key == "alpha_exponent") {
        c.alpha_exponent = to_real(key, v);
    } else if (key == "alpha_max") {
        c.alpha_max = to_real(key, v);
    } else if (key == "alpha_min") {
        c.alpha_min = to_real(key, v);
    } else if (key == "alpha_count") {
        c.alpha_count = to_int<int>(key, v);
    } else if (key == "J") {
        c.J_list.clear();
        for (const auto& s : split(v, ',')) c.J_list.push_back(to_int<int>(key, s));
    } else if (key == "methods") {
        c.methods.clear();
        for (const auto& s : split(v, ',')) c.methods.push_back(parse_method(s));
    } else if (key == "cases") {
        c.cases.clear();
        for (const auto& s : split(v, ',')) {
            const auto parts = split(s, ':');
            if (parts.size() != 2) throw std::invalid_argument("cases entries look like MITLAR:1");
            c.cases.push_back({parse_method(parts[0]), to_int<int>(key, parts[1])});
        }
    } else if (key == "level") {
        c.level = to_real(key, v);
    } else if (key == "seed") {
        c.seed = to_int<std::uint64_t>(key, v);
    } else if (key == "j_max") {
        c.j_max = to_int<int>(key, v);
    } else if (key == "mc_runs") {
        c.mc_runs = to_int<int>(key, v);
    } else if (key == "quadrature") {
        c.quadrature = parse_quadrature(v);
    } else if (key == "out") {
        c.out_dir = v;
    } else {
        throw std::invalid_argument("unknown config key '" + key + "'");
    }
}

using Settings = std::vector<std::pair<std::string, std::string>>;

/// Reads flat "key = value" lines; '#' starts a comment.
inline Settings parse_settings(std::istream& in) {
    Settings out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string t = detail::trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = detail::trim(std::string_view(t).substr(0, eq));
        if (key.empty()) throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
        out.emplace_back(std::move(key), detail::trim(std::string_view(t).substr(eq + 1)));
    }
    return out;
}

inline Settings read_settings_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    return parse_settings(in);
}

/// Preset first (explicit preset > "preset" in settings > fallback), then settings in order.
inline ExperimentConfig build_config(const Settings& settings, std::string_view fallback_preset,
                                     const std::string& explicit_preset = {}) {
    std::string preset(fallback_preset);
    for (const auto& [k, v] : settings)
        if (k == "preset") preset = v;
    if (!explicit_preset.empty()) preset = explicit_preset;
    ExperimentConfig c = preset_config(preset);
    for (const auto& [k, v] : settings)
        if (k != "preset") apply_setting(c, k, v);
    return c;
}

inline double resolve_scale(ScaleRule rule, double coef, double exponent, double h, int n) {
    switch (rule) {
        case ScaleRule::Absolute: return coef;
        case ScaleRule::MultipleOfH: return coef * h;
        case ScaleRule::PowerLaw: return coef * std::pow(2.0 * std::numbers::pi / n, exponent);
    }
    return coef;
}

inline double resolve_delta(const ExperimentConfig& c, int n) {
    return resolve_scale(c.delta_rule, c.delta, c.delta_exponent, (c.domain_hi - c.domain_lo) / n, n);
}

inline double resolve_alpha(const ExperimentConfig& c, int n) {
    return resolve_scale(c.alpha_rule, c.alpha, c.alpha_exponent, (c.domain_hi - c.domain_lo) / n, n);
}

/// alpha_count log-spaced points from alpha_max down to alpha_min, endpoints included.
inline std::vector<double> alpha_sweep(const ExperimentConfig& c) {
    if (!(c.alpha_max > 0.0 && c.alpha_min > 0.0)) throw std::invalid_argument("sweep bounds must be positive");
    if (c.alpha_count < 1) throw std::invalid_argument("alpha_count must be at least 1");
    if (c.alpha_count == 1) return {c.alpha_max};
    std::vector<double> out;
    const double a = std::log10(c.alpha_max), b = std::log10(c.alpha_min);
    for (int i = 0; i < c.alpha_count; ++i)
        out.push_back(std::pow(10.0, a + (b - a) * i / (c.alpha_count - 1)));
    out.front() = c.alpha_max;
    out.back() = c.alpha_min;
    return out;
}

inline Grid experiment_grid(const ExperimentConfig& c, int n) {
    return c.signal.dim == 1 ? make_grid_1d(c.domain_lo, c.domain_hi, n) : make_grid_2d(c.domain_lo, c.domain_hi, n);
}

}  // namespace helmreg::harness
