#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "dispersive/dunkl/quadrature.hpp"

namespace dispersive {

// h(r) = -i int_0^inf e^{-rt} (t^2 - 2it)^{(d-3)/2} dt. With u = rt and
// a = (d-3)/2 this is -i r^{-1-a} int_0^inf u^a e^{-u} (u/r - 2i)^a du, which
// generalized Gauss-Laguerre handles including the integrable u^{-1/2} at d = 2.
class HFunction {
public:
    explicit HFunction(int d, std::size_t nodes = 64) : d_(d), a_(0.5 * (d - 3.0)) {
        if (d < 2)
            throw IntegrabilityError("the defining integral of h diverges for d < 2");
        rule_ = gauss_laguerre(nodes, a_);
    }

    int dim() const noexcept { return d_; }
    std::size_t nodes() const noexcept { return rule_.nodes.size(); }

    std::complex<double> operator()(double r) const {
        if (!(r > 0.0))
            throw DomainError("h is evaluated at r > 0");
        std::complex<double> s = 0.0;
        for (std::size_t i = 0; i < rule_.nodes.size(); ++i)
            s += rule_.weights[i] * std::pow(std::complex<double>(rule_.nodes[i] / r, -2.0), a_);
        return std::complex<double>(0.0, -1.0) * std::pow(r, -1.0 - a_) * s;
    }

    // Central difference of order beta <= 4 with step 0.05 r.
    std::complex<double> derivative(int beta, double r) const {
        const double h = 0.05 * r;
        auto f = [&](double k) { return (*this)(r + k * h); };
        switch (beta) {
        case 0: return f(0);
        case 1: return (f(1) - f(-1)) / (2.0 * h);
        case 2: return (f(1) - 2.0 * f(0) + f(-1)) / (h * h);
        case 3: return (f(2) - 2.0 * f(1) + 2.0 * f(-1) - f(-2)) / (2.0 * h * h * h);
        case 4: return (f(2) - 4.0 * f(1) + 6.0 * f(0) - 4.0 * f(-1) + f(-2)) / (h * h * h * h);
        default: throw DomainError("derivative order must be 0..4");
        }
    }

private:
    int d_;
    double a_;
    QuadratureRule rule_;
};

struct HEnvelopeReport {
    int d = 3;
    int beta = 0;
    double envelope = 0.0;         // sup |h^(beta)(r)| (1+r)^{(d-1)/2+beta} over the samples
    double refined_envelope = 0.0; // same with doubled Laguerre nodes
    double relative_change = 0.0;
    bool finite = false;
    bool stable = false;           // relative_change <= 1%
};

// Log-spaced samples of [1, 100].
inline std::vector<double> h_sample_radii(std::size_t count = 64) {
    std::vector<double> r(count);
    for (std::size_t i = 0; i < count; ++i)
        r[i] = std::pow(100.0, static_cast<double>(i) / static_cast<double>(count - 1));
    return r;
}

inline HEnvelopeReport h_envelope_check(int d, int beta, const std::vector<double>& radii = h_sample_radii(),
                                        std::size_t nodes = 64) {
    if (beta < 0 || beta > 4)
        throw DomainError("derivative order must be 0..4");
    const HFunction h(d, nodes), h2(d, 2 * nodes);
    HEnvelopeReport rep;
    rep.d = d;
    rep.beta = beta;
    const double power = 0.5 * (d - 1.0) + beta;
    for (double r : radii) {
        const double w = std::pow(1.0 + r, power);
        rep.envelope = std::max(rep.envelope, std::abs(h.derivative(beta, r)) * w);
        rep.refined_envelope = std::max(rep.refined_envelope, std::abs(h2.derivative(beta, r)) * w);
    }
    rep.finite = std::isfinite(rep.envelope) && std::isfinite(rep.refined_envelope);
    rep.relative_change = std::abs(rep.refined_envelope - rep.envelope) / rep.refined_envelope;
    rep.stable = rep.finite && rep.relative_change <= 0.01;
    return rep;
}

} // namespace dispersive
