#pragma once

#include <cmath>
#include <vector>

#include "dispersive/core/fft.hpp"

namespace dispersive {

// Returns j when delta = 2^j exactly.
inline int dyadic_exponent(double delta) {
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw UnsupportedScaleError("scale must be a positive dyadic power");
    int e = 0;
    const double mant = std::frexp(delta, &e);
    if (mant != 0.5)
        throw UnsupportedScaleError("scale must be a dyadic power 2^j");
    return e - 1;
}

// g(X) = f(delta X) on the same lattice, delta = 2^j; no amplitude prefactor.
// For delta > 1 the samples are a subset of f's lattice and points mapped
// outside the box are zero (f is treated as vanishing outside [-L, L)^d).
// For delta < 1 the off-lattice half points come from exact spectral shifts,
// which is exact for band-limited data.
inline Field rescale_field(const Field& f, double delta) {
    const int j = dyadic_exponent(delta);
    const auto& g = f.grid();
    const std::size_t n = g.points();
    const auto d = static_cast<std::size_t>(g.dim());
    if (j == 0)
        return f;

    std::vector<cplx> out(g.size());
    std::vector<std::size_t> idx(d);

    if (j > 0) {
        const long D = 1L << j;
        const long offset = (D - 1) * static_cast<long>(n / 2);
        for (std::size_t p = 0; p < out.size(); ++p) {
            g.unravel(p, idx);
            std::size_t src = 0;
            bool inside = true;
            for (std::size_t a = 0; a < d && inside; ++a) {
                const long m = D * static_cast<long>(idx[a]) - offset;
                inside = m >= 0 && m < static_cast<long>(n);
                src = src * n + static_cast<std::size_t>(m);
            }
            out[p] = inside ? f[src] : cplx{};
        }
        return Field(g, std::move(out));
    }

    const std::size_t D = std::size_t{1} << (-j);
    if (2 * D > n)
        throw UnsupportedScaleError("contraction factor too large for the grid");
    const std::size_t base = n / 2 - n / (2 * D);
    const auto spectrum = forward_values(g, f.values());

    std::size_t combos = 1;
    for (std::size_t a = 0; a < d; ++a)
        combos *= D;
    std::vector<std::size_t> res(d);
    for (std::size_t c = 0; c < combos; ++c) {
        std::size_t rem = c;
        for (std::size_t a = 0; a < d; ++a) {
            res[a] = rem % D;
            rem /= D;
        }
        // f shifted by res * h / D along each axis.
        std::vector<cplx> shifted(spectrum);
        for (std::size_t p = 0; p < shifted.size(); ++p) {
            g.unravel(p, idx);
            double phase = 0.0;
            for (std::size_t a = 0; a < d; ++a)
                phase += g.frequency(idx[a]) * g.spacing() * static_cast<double>(res[a]) /
                         static_cast<double>(D);
            shifted[p] *= std::polar(1.0, phase);
        }
        shifted = inverse_values(g, std::move(shifted));
        for (std::size_t p = 0; p < out.size(); ++p) {
            g.unravel(p, idx);
            bool match = true;
            std::size_t src = 0;
            for (std::size_t a = 0; a < d && match; ++a) {
                match = idx[a] % D == res[a];
                src = src * n + base + idx[a] / D;
            }
            if (match)
                out[p] = shifted[src];
        }
    }
    return Field(g, std::move(out));
}

} // namespace dispersive
