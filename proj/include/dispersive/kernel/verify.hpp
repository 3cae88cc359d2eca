#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "dispersive/core/parallel.hpp"
#include "dispersive/kernel/decay_fit.hpp"
#include "dispersive/kernel/kernel.hpp"
#include "dispersive/norms/admissibility.hpp"

namespace dispersive {

struct DecayOptions {
    double t_min = 4.0;
    double t_max = 64.0;
    std::size_t samples = 16;
    std::size_t n_min = 512;
    std::size_t eta_samples = 33; // per radial line of the frozen y-frequency
    double tolerance = 0.15;
    double window_tolerance = 0.1;
    // Largest lattice (points in total) allowed for the shifted window
    // [2 t_min, 2 t_max]; beyond it the shifted fit reuses the main grid on
    // [2 t_min, t_max].
    std::size_t sensitivity_budget = std::size_t{1} << 22;
    unsigned jobs = 1;
};

struct DecayVerdict {
    double r = infinity;
    double rt = infinity;
    int k = 1;
    double fitted = 0.0;
    double predicted = 0.0;
    bool pass = false;
    DecayFit fit;
    DecayFit shifted_fit;
    bool shifted_window_full = true; // false when the budget forced [2 t_min, t_max]
    bool pre_asymptotic = false;     // |fit - shifted fit| > window_tolerance
    std::vector<std::pair<double, double>> samples;
};

namespace detail {

// Frozen y-frequencies covering the ball |eta| <= 2.
inline std::vector<std::vector<double>> eta_samples(int k, std::size_t count) {
    std::vector<std::vector<double>> out;
    if (k == 1) {
        for (std::size_t i = 0; i < count; ++i)
            out.push_back({-2.0 + 4.0 * static_cast<double>(i) / static_cast<double>(count - 1)});
        return out;
    }
    const auto dirs = sphere_points(k, 8);
    for (std::size_t i = 0; i < count; ++i) {
        const double rho = 2.0 * static_cast<double>(i) / static_cast<double>(count - 1);
        for (const auto& u : dirs) {
            std::vector<double> e(u);
            for (auto& v : e)
                v *= rho;
            out.push_back(std::move(e));
            if (rho == 0.0)
                break;
        }
    }
    return out;
}

// sup over the lattice of |K| for (inf, inf), or of sup_eta |K~| for (inf, 2).
inline std::vector<std::pair<double, double>> decay_samples(const Symbol& phi, int k, double rt,
                                                            const std::vector<double>& times,
                                                            std::size_t n_min, std::size_t eta_count,
                                                            unsigned jobs) {
    const double t_max = times.back();
    std::vector<std::pair<double, double>> out(times.size());
    if (std::isinf(rt)) {
        const KernelSynthesizer synth(phi, decay_grid(phi.dim(), k, phi.degree(), t_max, n_min));
        parallel_for(times.size(), jobs, [&](std::size_t i) { out[i] = {times[i], synth.sup(times[i])}; });
        return out;
    }
    const int xd = phi.dim() - k;
    if (xd < 1)
        throw StructuralError("the (inf, 2) endpoint needs a nonempty x-block");
    const GridSpec xg = decay_grid(xd, xd, phi.degree(), t_max, n_min);
    std::vector<PartialKernelSynthesizer> synths;
    for (const auto& eta : eta_samples(k, eta_count))
        synths.emplace_back(phi, xg, eta);
    parallel_for(times.size(), jobs, [&](std::size_t i) {
        double m = 0.0;
        for (const auto& s : synths)
            m = std::max(m, s.sup(times[i]));
        out[i] = {times[i], m};
    });
    return out;
}

} // namespace detail

// Fits the sup-norm decay of the localized kernel at one endpoint pair and
// compares it with -beta(r, rt), beta taken with M = the symbol's Hessian rank.
// Supported pairs are the endpoints (inf, inf) and (inf, 2).
inline DecayVerdict verify_decay_rates(const Symbol& phi, double r, double rt, int k,
                                       const DecayOptions& opt = {}) {
    if (!std::isinf(r) || !(std::isinf(rt) || rt == 2.0))
        throw StructuralError("decay verification supports the endpoints (inf, inf) and (inf, 2)");
    if (k < 1 || k > phi.dim())
        throw StructuralError("split k must satisfy 1 <= k <= d");
    DecayVerdict v;
    v.r = r;
    v.rt = rt;
    v.k = k;
    const EuclideanContext ctx{phi.dim(), phi.degree(), phi.hessian_rank()};
    v.predicted = -decay_rate(ctx, k, r, rt);

    const auto times = log_spaced_times(opt.t_min, opt.t_max, opt.samples);
    v.samples = detail::decay_samples(phi, k, rt, times, opt.n_min, opt.eta_samples, opt.jobs);
    v.fit = fit_decay(v.samples, opt.t_min, opt.t_max);
    v.fitted = v.fit.exponent;
    v.pass = std::abs(v.fitted - v.predicted) <= opt.tolerance;

    // Window sensitivity: the same fit over the doubled window.
    const int lattice_dim = std::isinf(rt) ? phi.dim() : phi.dim() - k;
    const GridSpec big = decay_grid(lattice_dim, lattice_dim, phi.degree(), 2.0 * opt.t_max, opt.n_min);
    if (big.size() <= opt.sensitivity_budget) {
        const auto t2 = log_spaced_times(2.0 * opt.t_min, 2.0 * opt.t_max, opt.samples);
        const auto s2 = detail::decay_samples(phi, k, rt, t2, opt.n_min, opt.eta_samples, opt.jobs);
        v.shifted_fit = fit_decay(s2, 2.0 * opt.t_min, 2.0 * opt.t_max);
    } else {
        v.shifted_window_full = false;
        const auto t2 = log_spaced_times(2.0 * opt.t_min, opt.t_max, opt.samples);
        const auto s2 = detail::decay_samples(phi, k, rt, t2, opt.n_min, opt.eta_samples, opt.jobs);
        v.shifted_fit = fit_decay(s2, 2.0 * opt.t_min, opt.t_max);
    }
    v.pre_asymptotic = std::abs(v.fit.exponent - v.shifted_fit.exponent) > opt.window_tolerance;
    return v;
}

} // namespace dispersive
