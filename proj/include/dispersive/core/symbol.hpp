#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dispersive/core/grid.hpp"

namespace dispersive {

enum class SymbolKind { fractional_power, wave, biharmonic, custom };

// Homogeneous real multiplier Phi(xi, eta) with its declared Hessian rank data.
// The evaluator works in long double so finite-difference Hessians keep their
// round-off well below the rank threshold.
class Symbol {
public:
    using Evaluator = std::function<long double(std::span<const long double>)>;

    Symbol(SymbolKind kind, std::string name, double degree, int dim, int split, int hessian_rank,
           int restricted_rank, Evaluator phi)
        : kind_(kind), name_(std::move(name)), degree_(degree), dim_(dim), split_(split),
          hessian_rank_(hessian_rank), restricted_rank_(restricted_rank), phi_(std::move(phi)) {
        if (!(degree > 0.0))
            throw StructuralError("symbol degree must be positive");
        if (dim < 1 || split < 1 || split > dim)
            throw StructuralError("symbol needs 1 <= k <= d");
        if (!phi_)
            throw StructuralError("symbol evaluator is empty");
    }

    SymbolKind kind() const noexcept { return kind_; }
    const std::string& name() const noexcept { return name_; }
    double degree() const noexcept { return degree_; }
    int dim() const noexcept { return dim_; }
    int split() const noexcept { return split_; }
    int hessian_rank() const noexcept { return hessian_rank_; }
    int restricted_rank() const noexcept { return restricted_rank_; }

    long double evaluate(std::span<const long double> zeta) const { return phi_(zeta); }

    double operator()(std::span<const double> zeta) const {
        std::vector<long double> z(zeta.begin(), zeta.end());
        return static_cast<double>(phi_(z));
    }

    // Phi at every lattice frequency in storage order; Phi(0) is 0 by convention.
    std::vector<double> on_lattice(const GridSpec& g) const {
        if (g.dim() != dim_)
            throw StructuralError("symbol and grid dimensions differ");
        std::vector<double> out(g.size());
        std::vector<std::size_t> idx(static_cast<std::size_t>(g.dim()));
        std::vector<long double> z(idx.size());
        for (std::size_t p = 0; p < out.size(); ++p) {
            g.unravel(p, idx);
            bool zero = true;
            for (std::size_t a = 0; a < idx.size(); ++a) {
                z[a] = g.frequency(idx[a]);
                zero = zero && idx[a] == 0;
            }
            if (zero) {
                out[p] = 0.0;
                continue;
            }
            const auto v = static_cast<double>(phi_(z));
            if (!std::isfinite(v))
                throw SymbolEvaluationError("symbol " + name_ + " is not finite at a lattice point");
            out[p] = v;
        }
        return out;
    }

private:
    SymbolKind kind_;
    std::string name_;
    double degree_;
    int dim_;
    int split_;
    int hessian_rank_;
    int restricted_rank_;
    Evaluator phi_;
};

namespace detail {

inline long double squared_modulus(std::span<const long double> z) {
    long double s = 0.0L;
    for (auto v : z)
        s += v * v;
    return s;
}

inline long double radial_power(long double s, double m) {
    if (m == 2.0)
        return s;
    if (m == 4.0)
        return s * s;
    if (m == 1.0)
        return std::sqrt(s);
    return std::pow(s, static_cast<long double>(m) / 2.0L);
}

} // namespace detail

// |zeta|^m. Rank d except for m = 1, where the radial direction is flat.
inline Symbol fractional_power_symbol(double m, int d, int k) {
    const int rank = (m == 1.0) ? d - 1 : d;
    std::ostringstream name;
    name << "|xi|";
    if (m != 1.0)
        name << '^' << m;
    return Symbol(m == 1.0 ? SymbolKind::wave : SymbolKind::fractional_power, name.str(), m, d, k, rank,
                  rank - k, [m](std::span<const long double> z) {
                      return detail::radial_power(detail::squared_modulus(z), m);
                  });
}

inline Symbol wave_symbol(int d, int k) { return fractional_power_symbol(1.0, d, k); }

// (|xi|^2 + |eta|^2)^2 written in the split form.
inline Symbol biharmonic_symbol(int d, int k) {
    return Symbol(SymbolKind::biharmonic, "(|xi|^2+|eta|^2)^2", 4.0, d, k, d, d - k,
                  [d, k](std::span<const long double> z) {
                      long double a = 0.0L, b = 0.0L;
                      for (int i = 0; i < d - k; ++i)
                          a += z[static_cast<std::size_t>(i)] * z[static_cast<std::size_t>(i)];
                      for (int i = d - k; i < d; ++i)
                          b += z[static_cast<std::size_t>(i)] * z[static_cast<std::size_t>(i)];
                      return (a + b) * (a + b);
                  });
}

// Deterministic quasi-uniform points on the unit sphere S^{dim-1}.
inline std::vector<std::vector<double>> sphere_points(int dim, std::size_t count) {
    std::vector<std::vector<double>> pts;
    pts.reserve(count);
    const double pi = std::numbers::pi;
    if (dim == 1) {
        for (std::size_t i = 0; i < count; ++i)
            pts.push_back({i % 2 == 0 ? 1.0 : -1.0});
    } else if (dim == 2) {
        for (std::size_t i = 0; i < count; ++i) {
            const double a = 2.0 * pi * (static_cast<double>(i) + 0.5) / static_cast<double>(count);
            pts.push_back({std::cos(a), std::sin(a)});
        }
    } else if (dim == 3) {
        const double golden = pi * (3.0 - std::sqrt(5.0));
        for (std::size_t i = 0; i < count; ++i) {
            const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(count);
            const double rr = std::sqrt(1.0 - z * z);
            const double a = golden * static_cast<double>(i);
            pts.push_back({rr * std::cos(a), rr * std::sin(a), z});
        }
    } else {
        std::mt19937_64 rng(0x5eedULL + static_cast<unsigned>(dim));
        std::normal_distribution<double> normal;
        for (std::size_t i = 0; i < count; ++i) {
            std::vector<double> p(static_cast<std::size_t>(dim));
            double s = 0.0;
            for (auto& v : p) {
                v = normal(rng);
                s += v * v;
            }
            for (auto& v : p)
                v /= std::sqrt(s);
            pts.push_back(std::move(p));
        }
    }
    return pts;
}

// Largest relative defect |Phi(lambda z) - lambda^m Phi(z)| / |lambda^m Phi(z)| over
// lambda in {1/2, 2} and `count` sphere points.
inline double homogeneity_defect(const Symbol& phi, std::size_t count = 64) {
    double worst = 0.0;
    for (const auto& p : sphere_points(phi.dim(), count)) {
        std::vector<long double> z(p.begin(), p.end());
        const long double base = phi.evaluate(z);
        for (long double lambda : {0.5L, 2.0L}) {
            std::vector<long double> zl(z);
            for (auto& v : zl)
                v *= lambda;
            const long double expect = std::pow(lambda, static_cast<long double>(phi.degree())) * base;
            const long double got = phi.evaluate(zl);
            const long double scale = std::max(std::abs(expect), 1e-300L);
            worst = std::max(worst, static_cast<double>(std::abs(got - expect) / scale));
        }
    }
    return worst;
}

// Smallest mu with mu^{-1} <= |Phi| <= mu on the sampled unit sphere.
inline double sphere_bound(const Symbol& phi, std::size_t count = 64) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const auto& p : sphere_points(phi.dim(), count)) {
        const double v = std::abs(phi(p));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (lo == 0.0)
        return std::numeric_limits<double>::infinity();
    return std::max(hi, 1.0 / lo);
}

} // namespace dispersive
