#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "dispersive/core/littlewood_paley.hpp"
#include "dispersive/dunkl/radial.hpp"
#include "dispersive/kernel/decay_fit.hpp"

namespace dispersive {

// Radial phase phi with its first two derivatives on [1/2, 2].
struct RadialPhase {
    std::string name;
    std::function<double(double)> phi;
    std::function<double(double)> d1;
    std::function<double(double)> d2;

    double max_slope() const {
        double m = 0.0;
        for (int i = 0; i <= 1000; ++i)
            m = std::max(m, std::abs(d1(0.5 + 1.5 * i / 1000.0)));
        return m;
    }

    bool curved() const {
        for (int i = 0; i <= 1000; ++i)
            if (std::abs(d2(0.5 + 1.5 * i / 1000.0)) > 1e-12)
                return true;
        return false;
    }
};

// phi(r) = r^a.
inline RadialPhase power_phase(double a) {
    std::ostringstream name;
    name << "r^" << a;
    return {name.str(), [a](double r) { return std::pow(r, a); },
            [a](double r) { return a * std::pow(r, a - 1.0); },
            [a](double r) { return a * (a - 1.0) * std::pow(r, a - 2.0); }};
}

struct OscillatoryValue {
    std::complex<double> value;
    double error_estimate = 0.0; // |I_P - I_2P|
    std::size_t panels = 0;      // P
};

// I(t, x) = int_{1/2}^{2} e^{-it phi(r)} psi(r) J_nu(r|x|)/(r|x|)^nu r^{N-1} dr with
// nu = (N-2)/2 and psi the dyadic annulus profile; normalization constant 1.
class DunklOscillatory {
public:
    static constexpr std::size_t node_budget = 10'000'000;

    DunklOscillatory(RadialPhase phase, const DunklParams& params)
        : phase_(std::move(phase)), N_(params.homogeneous_dim()),
          kernel_(0.5 * params.homogeneous_dim() - 1.0), gl_(gauss_legendre(16)) {
        slope_ = phase_.max_slope();
    }

    double homogeneous_dim() const noexcept { return N_; }
    const RadialPhase& phase() const noexcept { return phase_; }

    // P = 8 ceil((|t| max|phi'| + |x|) / 2 pi) panels, at least 8, each with
    // 16 Gauss-Legendre points; the value returned is the 2P result.
    OscillatoryValue evaluate(double t, double x) const {
        if (!std::isfinite(t) || !(x >= 0.0) || !std::isfinite(x))
            throw DomainError("need finite t and x-radius >= 0");
        const double osc = (std::abs(t) * slope_ + x) / (2.0 * std::numbers::pi);
        const auto P = std::max<std::size_t>(8, 8 * static_cast<std::size_t>(std::ceil(osc)));
        if (2 * P * gl_.nodes.size() > node_budget)
            throw CostError("oscillatory quadrature would exceed 1e7 nodes");
        const auto a = integrate(t, x, P);
        const auto b = integrate(t, x, 2 * P);
        return {b, std::abs(a - b), P};
    }

    std::complex<double> operator()(double t, double x) const { return evaluate(t, x).value; }

    // int psi(r) r^{N-1} dr / (2^nu Gamma(nu+1)): |I| never exceeds it.
    double l1_bound() const {
        // integrand is positive at t = 0, x = 0
        return std::real(integrate(0.0, 0.0, 256));
    }

private:
    std::complex<double> integrate(double t, double x, std::size_t panels) const {
        const double h = 1.5 / static_cast<double>(panels);
        std::complex<double> s = 0.0;
        for (std::size_t p = 0; p < panels; ++p) {
            const double lo = 0.5 + h * static_cast<double>(p);
            for (std::size_t i = 0; i < gl_.nodes.size(); ++i) {
                const double r = lo + 0.5 * h * (1.0 + gl_.nodes[i]);
                const double amp = lp_cutoff(r);
                if (amp == 0.0)
                    continue;
                s += 0.5 * h * gl_.weights[i] * amp * kernel_(r * x) * std::pow(r, N_ - 1.0) *
                     std::polar(1.0, -t * phase_.phi(r));
            }
        }
        return s;
    }

    RadialPhase phase_;
    double N_;
    ScaledBessel kernel_;
    QuadratureRule gl_;
    double slope_ = 0.0;
};

inline std::complex<double> dunkl_oscillatory(const RadialPhase& phase, const DunklParams& params,
                                              double x, double t) {
    return DunklOscillatory(phase, params)(t, x);
}

// Curves in (x, t) along which |I| is sampled.
enum class DunklRegime { far, near, ray };

struct DunklDecayOptions {
    double t_min = 4.0;
    double t_max = 64.0;
    std::size_t samples = 16;
    double tolerance = 0.15;
    double ray_ratio = 1.0; // c in |x| = c t for the ray regime
};

struct DunklDecayResult {
    DunklRegime regime = DunklRegime::near;
    double ratio = 0.0;      // |x| / t along the curve
    double predicted = 0.0;  // exponent, or the far-regime ceiling
    DecayFit fit;
    bool pass = false;
    double max_quadrature_error = 0.0;
    std::vector<std::pair<double, double>> samples; // (|(x,t)|, |I|)
};

// Samples |I| along |x| = c t and fits its decay in |(x, t)|. Near regime: c =
// phi'(1), the stationary ratio at the centre of the annulus; far regime: c =
// 2 max|phi'|. Near and ray regimes are compared with -N/2 when phi'' does not
// vanish and -(N-1)/2 otherwise; the far regime passes when the fit is at most
// -max(3, (N+2)/2).
inline DunklDecayResult verify_dunkl_decay(const RadialPhase& phase, const DunklParams& params,
                                           DunklRegime regime, const DunklDecayOptions& opt = {}) {
    const DunklOscillatory I(phase, params);
    const double N = params.homogeneous_dim();
    DunklDecayResult res;
    res.regime = regime;
    switch (regime) {
    case DunklRegime::far: res.ratio = 2.0 * phase.max_slope(); break;
    case DunklRegime::near: res.ratio = phase.d1(1.0); break;
    case DunklRegime::ray: res.ratio = opt.ray_ratio; break;
    }
    if (!(res.ratio >= 0.0))
        throw DomainError("regime ratio must be non-negative");
    const double speed = std::hypot(1.0, res.ratio);
    for (double t : log_spaced_times(opt.t_min, opt.t_max, opt.samples)) {
        const auto v = I.evaluate(t, res.ratio * t);
        res.max_quadrature_error = std::max(res.max_quadrature_error, v.error_estimate);
        res.samples.emplace_back(speed * t, std::abs(v.value));
    }
    res.fit = fit_decay(res.samples, speed * opt.t_min, speed * opt.t_max);
    if (regime == DunklRegime::far) {
        res.predicted = -std::max(3.0, 0.5 * (N + 2.0));
        res.pass = res.fit.exponent <= res.predicted;
    } else {
        res.predicted = phase.curved() ? -0.5 * N : -0.5 * (N - 1.0);
        res.pass = std::abs(res.fit.exponent - res.predicted) <= opt.tolerance;
    }
    return res;
}

} // namespace dispersive
