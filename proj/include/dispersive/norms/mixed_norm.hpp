#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "dispersive/core/fft.hpp"

namespace dispersive {

namespace detail {

inline double abs_pow(const cplx& z, double p) {
    const double a2 = std::norm(z);
    if (p == 2.0)
        return a2;
    if (p == 4.0)
        return a2 * a2;
    if (p == 1.0)
        return std::sqrt(a2);
    return std::pow(a2, 0.5 * p);
}

inline double power_sum_root(double s, double p) {
    if (p == 2.0)
        return std::sqrt(s);
    if (p == 1.0)
        return s;
    return std::pow(s, 1.0 / p);
}

inline void check_exponent(double p) {
    if (!(p >= 1.0))
        throw StructuralError("Lebesgue exponent must be >= 1 or infinity");
}

} // namespace detail

// (int_x (int_y |f|^rt dy)^{r/rt} dx)^{1/r} over the split (x, y) in R^{d-k} x R^k,
// by Riemann sums with cell weights h^{d-k} and h^k. Infinite exponents are
// lattice maxima, hence lower bounds for the continuum sup.
inline double mixed_space_norm(const Field& f, double r, double rt, int k) {
    detail::check_exponent(r);
    detail::check_exponent(rt);
    const auto& g = f.grid();
    if (k < 1 || k > g.dim())
        throw StructuralError("split k must satisfy 1 <= k <= d");
    const std::size_t inner = g.block_size(k);
    const std::size_t outer = g.size() / inner;
    const double h = g.spacing();
    const double wy = std::pow(h, k);
    const double wx = std::pow(h, g.dim() - k);
    const bool rt_inf = std::isinf(rt);
    const bool r_inf = std::isinf(r);

    double acc = 0.0;
    for (std::size_t o = 0; o < outer; ++o) {
        const cplx* row = f.values().data() + o * inner;
        double in = 0.0;
        if (rt_inf) {
            for (std::size_t i = 0; i < inner; ++i)
                in = std::max(in, std::abs(row[i]));
        } else {
            for (std::size_t i = 0; i < inner; ++i)
                in += detail::abs_pow(row[i], rt);
            in *= wy;
        }
        if (r_inf) {
            const double v = rt_inf ? in : detail::power_sum_root(in, rt);
            acc = std::max(acc, v);
        } else if (rt_inf) {
            acc += std::pow(in, r);
        } else if (r == rt) {
            acc += in;
        } else {
            acc += std::pow(in, r / rt);
        }
    }
    if (r_inf)
        return acc;
    return detail::power_sum_root(acc * wx, r);
}

inline double mixed_space_norm(const Field& f, double r, double rt) {
    return mixed_space_norm(f, r, rt, f.grid().split());
}

// Homogeneous Sobolev norm (2L)^{d/2} (sum |xi|^{2s} |F|^2)^{1/2}. The zero mode
// is dropped except at s = 0, where the norm is exactly the L^2 norm.
inline double hdot_norm_spectrum(const GridSpec& g, const std::vector<cplx>& spectrum, double s) {
    const auto m2 = squared_frequency_modulus(g);
    double acc = 0.0;
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        double w;
        if (s == 0.0)
            w = 1.0;
        else if (m2[i] == 0.0)
            w = 0.0;
        else
            w = std::pow(m2[i], s);
        acc += w * std::norm(spectrum[i]);
    }
    return std::pow(2.0 * g.half_length(), 0.5 * g.dim()) * std::sqrt(acc);
}

inline double hdot_norm(const Field& f, double s) {
    return hdot_norm_spectrum(f.grid(), forward_values(f.grid(), f.values()), s);
}

// <nabla_y>^s f = F^{-1} (1+|eta|^2)^{s/2} F f, acting on the last k axes.
inline Field y_bessel_potential(const Field& f, double s, int k) {
    const auto& g = f.grid();
    if (k < 1 || k > g.dim())
        throw StructuralError("split k must satisfy 1 <= k <= d");
    if (s == 0.0)
        return f;
    auto spec = forward_values(g, f.values());
    const auto eta2 = squared_frequency_modulus(g, g.dim() - k, g.dim());
    for (std::size_t i = 0; i < spec.size(); ++i)
        spec[i] *= std::pow(1.0 + eta2[i], 0.5 * s);
    return Field(g, inverse_values(g, std::move(spec)));
}

// || (1+|eta|^2)^{s/2} f ||_{L^p_x L^2_y}.
inline double mixed_sobolev_norm(const Field& f, double s, int k, double p) {
    return mixed_space_norm(y_bessel_potential(f, s, k), p, 2.0, k);
}

// Composite trapezoid of value^q over strictly increasing times; q = inf is the max.
inline double time_norm(const std::vector<std::pair<double, double>>& samples, double q) {
    detail::check_exponent(q);
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (!(samples[i].first > samples[i - 1].first))
            throw StructuralError("sample times must be strictly increasing");
    if (std::isinf(q)) {
        if (samples.empty())
            throw InsufficientDataError("no samples");
        double m = 0.0;
        for (const auto& [t, v] : samples)
            m = std::max(m, v);
        return m;
    }
    if (samples.size() < 2)
        throw InsufficientDataError("time norm needs at least two samples");
    double acc = 0.0;
    for (std::size_t i = 1; i < samples.size(); ++i) {
        const double dt = samples[i].first - samples[i - 1].first;
        acc += 0.5 * dt * (std::pow(samples[i].second, q) + std::pow(samples[i - 1].second, q));
    }
    return std::pow(acc, 1.0 / q);
}

} // namespace dispersive
