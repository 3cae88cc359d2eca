#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "dispersive/core/error.hpp"

namespace dispersive {

struct DecayFit {
    double exponent = 0.0;     // slope of log(value) against log(1+t)
    double intercept = 0.0;
    double max_residual = 0.0; // largest |log(value) - fitted line|
    double t_min = 0.0;
    double t_max = 0.0;
    std::size_t count = 0;
};

// Least-squares power law over the samples with t in [t_min, t_max].
inline DecayFit fit_decay(const std::vector<std::pair<double, double>>& samples, double t_min,
                          double t_max) {
    if (!(t_min >= 2.0) || !(t_max > t_min))
        throw StructuralError("fit window must satisfy 2 <= t_min < t_max");
    std::vector<std::pair<double, double>> pts;
    for (const auto& [t, v] : samples) {
        if (t < t_min || t > t_max)
            continue;
        if (!(v > 0.0) || !std::isfinite(v))
            throw DataError("decay samples must be positive and finite");
        pts.emplace_back(std::log1p(t), std::log(v));
    }
    if (pts.size() < 8)
        throw InsufficientDataError("a decay fit needs at least 8 samples in the window");
    const double n = static_cast<double>(pts.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    DecayFit f;
    f.exponent = sxy / sxx;
    f.intercept = my - f.exponent * mx;
    for (const auto& [x, y] : pts)
        f.max_residual = std::max(f.max_residual, std::abs(y - f.intercept - f.exponent * x));
    f.t_min = t_min;
    f.t_max = t_max;
    f.count = pts.size();
    return f;
}

// `count` log-spaced times covering [t_min, t_max] inclusive.
inline std::vector<double> log_spaced_times(double t_min, double t_max, std::size_t count) {
    std::vector<double> t(count);
    const double a = std::log(t_min), b = std::log(t_max);
    for (std::size_t i = 0; i < count; ++i)
        t[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
    t.front() = t_min;
    t.back() = t_max;
    return t;
}

} // namespace dispersive
