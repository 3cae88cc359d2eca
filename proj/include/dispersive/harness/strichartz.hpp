#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "dispersive/core/propagator.hpp"
#include "dispersive/core/rescale.hpp"
#include "dispersive/norms/admissibility.hpp"
#include "dispersive/norms/mixed_norm.hpp"

namespace dispersive {

// Gaussian wave packet at dyadic band j: width sigma = c 2^{-j}, carrier
// |xi0| = u 2^j, centred at the origin.
struct WavePacket {
    int band = 0;
    double width = 1.0;
    std::vector<double> carrier;

    double carrier_modulus() const {
        double s = 0.0;
        for (double v : carrier)
            s += v * v;
        return std::sqrt(s);
    }
};

// Member i of the seeded family. Bands cycle through [band_min, band_max] and
// each member draws from its own stream, so a family of 2n extends the family
// of n without changing it.
inline WavePacket family_packet(std::uint64_t seed, std::size_t i, int dim, int band_min, int band_max) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> c(2.0, 3.0), u(1.0, 1.5);
    std::normal_distribution<double> normal;
    WavePacket p;
    p.band = band_min + static_cast<int>(i % static_cast<std::size_t>(band_max - band_min + 1));
    p.width = c(rng) * std::ldexp(1.0, -p.band);
    const double modulus = u(rng) * std::ldexp(1.0, p.band);
    std::vector<double> dir(static_cast<std::size_t>(dim));
    double s = 0.0;
    for (auto& v : dir) {
        v = normal(rng);
        s += v * v;
    }
    for (auto& v : dir)
        v *= modulus / std::sqrt(s);
    p.carrier = std::move(dir);
    return p;
}

// L = max(48, 14 sigma) keeps the packet and its 1/2-dilate inside the box;
// n is the smallest power of two >= 256 whose Nyquist frequency clears
// headroom * (|xi0| + 4/sigma). A headroom of 2.2 leaves room for the 2-dilate.
inline GridSpec packet_grid(const WavePacket& p, int dim, int split, double headroom) {
    const double L = std::max(48.0, 14.0 * p.width);
    const double need = headroom * (p.carrier_modulus() + 4.0 / p.width);
    std::size_t n = 256;
    while (std::numbers::pi * static_cast<double>(n) / (2.0 * L) < need)
        n *= 2;
    return GridSpec(dim, split, L, n);
}

inline Field sample_packet(const WavePacket& p, const GridSpec& g) {
    const double inv = 1.0 / (2.0 * p.width * p.width);
    return Field::sample(g, [&](std::span<const double> x) {
        double r2 = 0.0, ph = 0.0;
        for (std::size_t a = 0; a < x.size(); ++a) {
            r2 += x[a] * x[a];
            ph += p.carrier[a] * x[a];
        }
        return std::exp(-r2 * inv) * std::polar(1.0, ph);
    });
}

// t = 0 and T 2^{i/4} for i = -48..0.
inline std::vector<double> strichartz_times(double T) {
    std::vector<double> t{0.0};
    for (int i = -48; i <= 0; ++i)
        t.push_back(T * std::pow(2.0, i / 4.0));
    return t;
}

// R(f) = ||e^{it Phi} f||_{L^q_t([0,T]) L^r_x L^rt_y} / ||f||_{Hdot^s}.
inline double strichartz_ratio(const Field& f, const Symbol& phi, const ExponentSelection& sel, double T) {
    const Propagator prop(phi, f.grid());
    const auto spec = forward_values(f.grid(), f.values());
    std::vector<std::pair<double, double>> samples;
    for (double t : strichartz_times(T))
        samples.emplace_back(t, mixed_space_norm(prop.from_spectrum(spec, t), sel.r(), sel.rt(), sel.k()));
    return time_norm(samples, sel.q()) / hdot_norm_spectrum(f.grid(), spec, sel.s());
}

// R(f_delta) / R(f) with f_delta(x) = f(delta x) and the window [0, T delta^{-m}],
// the image of [0, T] under the scaling of the flow.
inline double strichartz_scaling_ratio(const Field& f, const Symbol& phi, const ExponentSelection& sel,
                                       double T, double delta) {
    const double base = strichartz_ratio(f, phi, sel, T);
    const double scaled = strichartz_ratio(rescale_field(f, delta), phi, sel, T * std::pow(delta, -phi.degree()));
    return scaled / base;
}

} // namespace dispersive
