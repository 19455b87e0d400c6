#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "helmreg/grid.hpp"

namespace helmreg::harness {

/// amplitude · sin(kx·π·x) [· sin(ky·π·y)]
struct SineTerm {
    double amplitude = 1.0;
    double kx = 1.0;
    double ky = 1.0;
};

struct SignalSpec {
    std::string name = "custom";
    int dim = 1;
    std::vector<SineTerm> terms;
};

inline SignalSpec signal_preset(std::string_view name) {
    if (name == "stopping1d") return {"stopping1d", 1, {{1.0, 1.0, 1.0}, {1.0, 200.0, 1.0}}};
    if (name == "compare1d") return {"compare1d", 1, {{1.0, 1.0, 1.0}, {0.1, 100.0, 1.0}}};
    if (name == "rates2d") return {"rates2d", 2, {{1.0, 1.0, 1.0}, {1.0, 20.0, 20.0}}};
    throw std::invalid_argument("unknown signal preset '" + std::string(name) + "'");
}

/// Parses "amp:kx[:ky];amp:kx[:ky];..." (empty string gives no terms).
inline std::vector<SineTerm> parse_terms(std::string_view text) {
    std::vector<SineTerm> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find(';', pos);
        if (end == std::string_view::npos) end = text.size();
        const std::string item(text.substr(pos, end - pos));
        pos = end + 1;
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        SineTerm t;
        char c1 = 0, c2 = 0;
        char tail[2] = {0, 0};
        const int got = std::sscanf(item.c_str(), " %lf %c %lf %c %lf %1s", &t.amplitude, &c1, &t.kx, &c2, &t.ky, tail);
        if (!((got == 3 && c1 == ':') || (got == 5 && c1 == ':' && c2 == ':')))
            throw std::invalid_argument("bad signal term '" + item + "', expected amp:kx[:ky]");
        out.push_back(t);
    }
    return out;
}

namespace detail {

inline bool vanishes_at(double k, double x) {
    const double kx = k * x;
    return std::abs(kx - std::round(kx)) < 1e-9;
}

}  // namespace detail

/// Samples the signal. Every term must vanish on the domain boundary.
inline Field gen_signal(const SignalSpec& spec, const Grid& grid) {
    if (spec.dim != grid.dim()) throw std::invalid_argument("signal dimension does not match grid");
    for (const SineTerm& t : spec.terms)
        for (int a = 0; a < grid.dim(); ++a) {
            const double k = a == 0 ? t.kx : t.ky;
            if (!detail::vanishes_at(k, grid.axis(a).lo) || !detail::vanishes_at(k, grid.axis(a).hi))
                throw std::invalid_argument("sine term does not vanish on the domain boundary");
        }
    constexpr double pi = std::numbers::pi;
    if (grid.dim() == 1)
        return sample_function(grid, std::function<double(double)>([&](double x) {
                                   double s = 0.0;
                                   for (const SineTerm& t : spec.terms) s += t.amplitude * std::sin(t.kx * pi * x);
                                   return s;
                               }));
    return sample_function(grid, std::function<double(double, double)>([&](double x, double y) {
                               double s = 0.0;
                               for (const SineTerm& t : spec.terms)
                                   s += t.amplitude * std::sin(t.kx * pi * x) * std::sin(t.ky * pi * y);
                               return s;
                           }));
}

}  // namespace helmreg::harness
