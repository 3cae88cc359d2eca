#pragma once

#include <cmath>
#include <vector>

#include "dispersive/core/fft.hpp"
#include "dispersive/core/symbol.hpp"

namespace dispersive {

// e^{it Phi(D)} on a fixed grid; the lattice symbol is evaluated once.
class Propagator {
public:
    Propagator(const Symbol& phi, const GridSpec& grid) : grid_(grid), phi_(phi.on_lattice(grid)) {}

    const GridSpec& grid() const noexcept { return grid_; }
    const std::vector<double>& lattice_symbol() const noexcept { return phi_; }

    // Multiplies a spectrum by e^{it Phi} in place. The phase t Phi reaches 1e7
    // on fine grids, so it is formed and reduced mod 2 pi in long double.
    void advance_spectrum(std::vector<cplx>& spectrum, double t) const {
        if (!std::isfinite(t))
            throw DomainError("propagation time must be finite");
        if (t == 0.0)
            return;
        constexpr long double two_pi = 6.283185307179586476925286766559L;
        const long double tl = t;
        for (std::size_t i = 0; i < spectrum.size(); ++i)
            spectrum[i] *= std::polar(1.0, static_cast<double>(std::fmod(tl * phi_[i], two_pi)));
    }

    Field spectrum_at(const Field& spectrum, double t) const {
        check(spectrum);
        std::vector<cplx> v(spectrum.values());
        advance_spectrum(v, t);
        return Field(grid_, std::move(v));
    }

    Field apply(const Field& f, double t) const {
        check(f);
        auto v = forward_values(grid_, f.values());
        advance_spectrum(v, t);
        return Field(grid_, inverse_values(grid_, std::move(v)));
    }

    // Physical field at time t from a precomputed spectrum of the data.
    Field from_spectrum(const std::vector<cplx>& spectrum, double t) const {
        std::vector<cplx> v(spectrum);
        advance_spectrum(v, t);
        return Field(grid_, inverse_values(grid_, std::move(v)));
    }

private:
    void check(const Field& f) const {
        if (!(f.grid() == grid_))
            throw StructuralError("field grid differs from propagator grid");
    }

    GridSpec grid_;
    std::vector<double> phi_;
};

inline Field apply_propagator(const Field& f, const Symbol& phi, double t) {
    return Propagator(phi, f.grid()).apply(f, t);
}

} // namespace dispersive
