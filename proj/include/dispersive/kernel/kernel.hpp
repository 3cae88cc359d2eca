#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "dispersive/core/fft.hpp"
#include "dispersive/core/littlewood_paley.hpp"
#include "dispersive/core/symbol.hpp"

namespace dispersive {

// |grad Phi| bound on the annulus [1/2, 2] for a degree-m symbol.
inline double group_speed_bound(double m) { return m * std::pow(2.0, m - 1.0); }

// Half-length giving at least 16 lattice points across [1/2, 2].
inline constexpr double min_kernel_half_length = 32.0 * std::numbers::pi / 3.0;

// Box large enough that a packet leaving the origin at the maximal group speed
// stays four annulus wavelengths inside the box up to t_max; points per axis is
// the smallest power of two >= n_min with Nyquist frequency >= 2.5.
inline GridSpec decay_grid(int dim, int split, double degree, double t_max, std::size_t n_min = 512) {
    const double pi = std::numbers::pi;
    const double L = group_speed_bound(degree) * t_max + 4.0 * (2.0 * pi / 1.5);
    std::size_t n = 8;
    while (n < n_min || static_cast<double>(n) < 5.0 * L / pi)
        n *= 2;
    return GridSpec(dim, split, std::max(L, min_kernel_half_length), n);
}

namespace detail {

inline void require_annulus_resolved(const GridSpec& g) {
    if (g.half_length() < min_kernel_half_length * (1.0 - 1e-12))
        throw ResolutionError("box too small: fewer than 16 lattice frequencies span [1/2, 2]");
    if (!(g.nyquist() > 2.0))
        throw ResolutionError("Nyquist frequency does not clear the annulus");
}

} // namespace detail

// Frequency-localized kernel K(., t) = (2 pi)^{-d} int e^{i z.zeta} e^{it Phi} psi(2^{-j}|zeta|) dzeta
// on the lattice. The multiplier data is built once and reused across t.
class KernelSynthesizer {
public:
    KernelSynthesizer(const Symbol& phi, const GridSpec& grid, int band = 0) : grid_(grid) {
        detail::require_annulus_resolved(grid);
        if (phi.dim() != grid.dim())
            throw StructuralError("symbol and grid dimensions differ");
        psi_ = lp_multiplier(grid, band);
        phi_ = phi.on_lattice(grid);
        norm_ = std::pow(2.0 * grid.half_length(), -grid.dim());
    }

    const GridSpec& grid() const noexcept { return grid_; }

    std::vector<cplx> values(double t) const {
        std::vector<cplx> v(grid_.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            if (psi_[i] != 0.0)
                v[i] = norm_ * psi_[i] * std::polar(1.0, t * phi_[i]);
        return inverse_values(grid_, std::move(v));
    }

    Field kernel(double t) const { return Field(grid_, values(t)); }

    double sup(double t) const {
        double m = 0.0;
        for (const auto& z : values(t))
            m = std::max(m, std::abs(z));
        return m;
    }

    // Discrete ||psi||_1 (2 pi)^{-d}, an upper bound for sup |K(., t)|.
    double l1_bound() const {
        double s = 0.0;
        for (double w : psi_)
            s += std::abs(w);
        return norm_ * s;
    }

private:
    GridSpec grid_;
    std::vector<double> psi_;
    std::vector<double> phi_;
    double norm_ = 1.0;
};

inline Field synthesize_kernel(const Symbol& phi, const GridSpec& grid, double t, int band = 0) {
    return KernelSynthesizer(phi, grid, band).kernel(t);
}

// Partial kernel at a frozen y-frequency eta (|eta| <= 2), a field over the
// x-block: (2 pi)^{-(d-k)} int e^{i x.xi} e^{it Phi(xi, eta)} psi(|(xi, eta)|) dxi.
class PartialKernelSynthesizer {
public:
    PartialKernelSynthesizer(const Symbol& phi, const GridSpec& x_grid, std::span<const double> eta)
        : grid_(x_grid) {
        const int k = static_cast<int>(eta.size());
        if (k < 1 || x_grid.dim() + k != phi.dim())
            throw StructuralError("x-block and eta dimensions must add up to the symbol dimension");
        double e2 = 0.0;
        for (double v : eta)
            e2 += v * v;
        if (std::sqrt(e2) > 2.0)
            throw DomainError("frozen eta lies outside the cutoff support |eta| <= 2");
        detail::require_annulus_resolved(x_grid);
        const auto xi2 = squared_frequency_modulus(x_grid);
        psi_.resize(x_grid.size());
        phi_.resize(x_grid.size());
        std::vector<std::size_t> idx(static_cast<std::size_t>(x_grid.dim()));
        std::vector<long double> z(static_cast<std::size_t>(phi.dim()));
        for (std::size_t a = 0; a < eta.size(); ++a)
            z[static_cast<std::size_t>(x_grid.dim()) + a] = eta[a];
        for (std::size_t p = 0; p < psi_.size(); ++p) {
            psi_[p] = lp_cutoff(std::sqrt(xi2[p] + e2));
            if (psi_[p] == 0.0)
                continue;
            x_grid.unravel(p, idx);
            for (std::size_t a = 0; a < idx.size(); ++a)
                z[a] = x_grid.frequency(idx[a]);
            phi_[p] = static_cast<double>(phi.evaluate(z));
        }
        norm_ = std::pow(2.0 * x_grid.half_length(), -x_grid.dim());
    }

    std::vector<cplx> values(double t) const {
        std::vector<cplx> v(grid_.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            if (psi_[i] != 0.0)
                v[i] = norm_ * psi_[i] * std::polar(1.0, t * phi_[i]);
        return inverse_values(grid_, std::move(v));
    }

    Field kernel(double t) const { return Field(grid_, values(t)); }

    double sup(double t) const {
        double m = 0.0;
        for (const auto& z : values(t))
            m = std::max(m, std::abs(z));
        return m;
    }

private:
    GridSpec grid_;
    std::vector<double> psi_;
    std::vector<double> phi_;
    double norm_ = 1.0;
};

inline Field synthesize_partial_kernel(const Symbol& phi, const GridSpec& x_grid,
                                       std::span<const double> eta, double t) {
    return PartialKernelSynthesizer(phi, x_grid, eta).kernel(t);
}

} // namespace dispersive
