#pragma once

#include <cmath>
#include <vector>

#include "dispersive/core/fft.hpp"

namespace dispersive {

// theta = 1 on [0,1], 0 on [2,inf), smooth in between.
inline double smooth_step(double rho) {
    auto g = [](double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; };
    const double a = g(2.0 - rho);
    const double b = g(rho - 1.0);
    return a / (a + b);
}

// Radial annulus profile supported in [1/2, 2].
inline double lp_cutoff(double rho) { return smooth_step(rho) - smooth_step(2.0 * rho); }

struct LPStack {
    int j_min = 0;
    int j_max = 0;

    double weight(int j, double rho) const { return lp_cutoff(std::ldexp(rho, -j)); }

    // Dyadic range covering every nonzero frequency of the grid, so the
    // projections sum to the identity off the zero mode.
    static LPStack for_grid(const GridSpec& g) {
        const double lo = g.frequency_step();
        const double hi = g.nyquist() * std::sqrt(static_cast<double>(g.dim()));
        return LPStack{static_cast<int>(std::floor(std::log2(lo))),
                       static_cast<int>(std::ceil(std::log2(hi)))};
    }
};

// psi(2^{-j} |zeta|) at every lattice frequency.
inline std::vector<double> lp_multiplier(const GridSpec& g, int j) {
    auto w = squared_frequency_modulus(g);
    for (auto& v : w)
        v = lp_cutoff(std::ldexp(std::sqrt(v), -j));
    return w;
}

inline Field lp_project(const Field& f, int j, const LPStack& stack) {
    const auto& g = f.grid();
    if (j < stack.j_min || j > stack.j_max)
        throw OutOfRangeError("dyadic index outside the stack range");
    const double lo = std::ldexp(1.0, j - 1);
    const double hi = std::ldexp(1.0, j + 1);
    if (hi <= g.frequency_step() || lo >= g.nyquist() * std::sqrt(static_cast<double>(g.dim())))
        throw OutOfRangeError("dyadic annulus contains no lattice frequency");
    auto spec = forward_values(g, f.values());
    const auto w = lp_multiplier(g, j);
    for (std::size_t i = 0; i < spec.size(); ++i)
        spec[i] *= w[i];
    return Field(g, inverse_values(g, std::move(spec)));
}

} // namespace dispersive
