#pragma once

#include <cmath>
#include <vector>

#include "dispersive/core/propagator.hpp"
#include "dispersive/solver/nonlinearity.hpp"

namespace dispersive {

using Trajectory = std::vector<Field>;

// n uniform nodes on [0, T].
inline std::vector<double> uniform_times(double T, std::size_t n) {
    if (!(T > 0.0) || n < 2)
        throw StructuralError("time grid needs T > 0 and at least two nodes");
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i)
        t[i] = T * static_cast<double>(i) / static_cast<double>(n - 1);
    return t;
}

inline Trajectory linear_flow(const Field& f, const Propagator& prop, const std::vector<double>& times) {
    const auto spec = forward_values(f.grid(), f.values());
    Trajectory out;
    out.reserve(times.size());
    for (double t : times)
        out.push_back(prop.from_spectrum(spec, t));
    return out;
}

// Nu(t_i) = e^{i t_i Phi} [ f^ - i int_0^{t_i} e^{-i tau Phi} F_p(u)^(tau) dtau ], the
// tau integral by cumulative trapezoid. `step` labels a divergence error.
inline Trajectory duhamel_map(const Trajectory& u, const Field& f, const Propagator& prop,
                              const NonlinearSpec& spec, const std::vector<double>& times,
                              std::size_t step = 0) {
    if (times.size() < 9)
        throw StructuralError("the Duhamel map needs at least 9 time nodes");
    if (u.size() != times.size())
        throw StructuralError("trajectory and time grid lengths differ");
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double dt = times[1] - times[0];
        if (std::abs(times[i] - times[i - 1] - dt) > 1e-9 * std::max(1.0, times.back()) || times[0] != 0.0)
            throw StructuralError("time nodes must be uniform on [0, T]");
    }
    const auto& g = prop.grid();
    const double guard = 1e6 * sup_norm(f);
    const auto f_hat = forward_values(g, f.values());

    std::vector<cplx> integral(g.size()), prev, cur;
    Trajectory out;
    out.reserve(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (spec.lambda != 0.0) {
            cur = forward_values(g, evaluate_nonlinearity(u[i], spec).values());
            prop.advance_spectrum(cur, -times[i]);
            if (i > 0) {
                const double w = 0.5 * (times[i] - times[i - 1]);
                for (std::size_t p = 0; p < cur.size(); ++p)
                    integral[p] += w * (prev[p] + cur[p]);
            }
            prev.swap(cur);
        }
        std::vector<cplx> v(f_hat);
        for (std::size_t p = 0; p < v.size(); ++p)
            v[p] -= cplx(0.0, 1.0) * integral[p];
        prop.advance_spectrum(v, times[i]);
        v = inverse_values(g, std::move(v));
        for (const auto& z : v)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > guard)
                throw DivergenceError("Picard iterate left the bounded regime", step);
        out.emplace_back(g, std::move(v));
    }
    return out;
}

} // namespace dispersive
