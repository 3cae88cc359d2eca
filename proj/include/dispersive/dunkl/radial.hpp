#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>

#include "dispersive/dunkl/bessel.hpp"

namespace dispersive {

// Product reflection weights: gamma1 on the x-block, gamma2 on the y-block.
struct DunklParams {
    int d = 1;
    double gamma1 = 0.0;
    double gamma2 = 0.0;
    int k = 1;

    DunklParams() = default;
    DunklParams(int d_, double g1, double g2, int k_ = 1) : d(d_), gamma1(g1), gamma2(g2), k(k_) {
        if (d_ < 1)
            throw StructuralError("dimension must be at least 1");
        if (!(g1 >= 0.0) || !(g2 >= 0.0))
            throw StructuralError("weight degrees must be non-negative");
        if (k_ < 1 || k_ > d_)
            throw StructuralError("split k must satisfy 1 <= k <= d");
    }

    double gamma() const noexcept { return gamma1 + gamma2; }
    double homogeneous_dim() const noexcept { return d + 2.0 * gamma(); }
};

// Order of the radial Bessel kernel: N/2 - 1 by default; the printed variant
// uses (d-2)/2 regardless of the weights.
enum class BesselOrderChoice { homogeneous, printed };

inline double radial_bessel_order(const DunklParams& p, BesselOrderChoice c = BesselOrderChoice::homogeneous) {
    return c == BesselOrderChoice::homogeneous ? 0.5 * p.homogeneous_dim() - 1.0 : 0.5 * (p.d - 2.0);
}

// z -> J_nu(z) / z^nu, including the order -1/2 where it is sqrt(2/pi) cos z.
class ScaledBessel {
public:
    explicit ScaledBessel(double nu) : nu_(nu) {
        if (nu != -0.5)
            j_.emplace(nu);
    }

    double order() const noexcept { return nu_; }

    double operator()(double z) const {
        if (!j_)
            return std::sqrt(2.0 / std::numbers::pi) * std::cos(z);
        return j_->scaled(z);
    }

    double at_zero() const {
        return j_ ? j_->scaled_at_zero() : std::sqrt(2.0 / std::numbers::pi);
    }

private:
    double nu_;
    std::optional<BesselJ> j_;
};

struct RadialTransformValue {
    double value = 0.0;
    double error_estimate = 0.0; // against the doubled panel count
};

// F(rho) = int_0^inf f(r) J_nu(r rho) / (r rho)^nu r^{N-1} dr, normalization constant 1.
// With nu = N/2 - 1 and gamma = 0 this is the unitary Fourier transform
// (2 pi)^{-d/2} int f(x) e^{-i x.xi} dx of the radial field; it is unitary for
// the measure r^{N-1} dr in general.
class RadialDunklTransform {
public:
    using Profile = std::function<double(double)>;

    RadialDunklTransform(Profile f, const DunklParams& params,
                         BesselOrderChoice order = BesselOrderChoice::homogeneous)
        : f_(std::move(f)), N_(params.homogeneous_dim()), kernel_(radial_bessel_order(params, order)) {
        cutoff_ = truncation_radius(f_);
        gl_ = gauss_legendre(16);
        head_ = gauss_jacobi(16, 0.0, N_ - 1.0);
    }

    double truncation() const noexcept { return cutoff_; }

    RadialTransformValue evaluate(double rho) const {
        if (!(rho >= 0.0) || !std::isfinite(rho))
            throw DomainError("output radius must be finite and non-negative");
        const double osc = rho * cutoff_ / (2.0 * std::numbers::pi);
        const auto panels = static_cast<std::size_t>(16 + 8 * std::ceil(osc) + std::ceil(4.0 * cutoff_));
        const double a = integrate(rho, panels);
        const double b = integrate(rho, 2 * panels);
        return {b, std::abs(a - b)};
    }

    double operator()(double rho) const { return evaluate(rho).value; }

    // Smallest R on a 1/4 grid with |f| < 1e-14 on [R, R + max(4, R)].
    static double truncation_radius(const Profile& f) {
        for (double R = 0.25; R <= 1e4; R += 0.25) {
            const double span = std::max(4.0, R);
            bool small = true;
            for (int i = 0; i <= 64 && small; ++i)
                small = std::abs(f(R + span * i / 64.0)) < 1e-14;
            if (small)
                return R;
        }
        throw IntegrabilityError("profile does not fall below 1e-14 before r = 1e4");
    }

private:
    double integrate(double rho, std::size_t panels) const {
        const double h = cutoff_ / static_cast<double>(panels);
        // First panel: the r^{N-1} factor is carried by a Jacobi weight.
        double s = 0.0;
        for (std::size_t i = 0; i < head_.nodes.size(); ++i) {
            const double r = 0.5 * h * (1.0 + head_.nodes[i]);
            s += head_.weights[i] * f_(r) * kernel_(r * rho);
        }
        s *= std::pow(0.5 * h, N_);
        for (std::size_t p = 1; p < panels; ++p) {
            const double lo = h * static_cast<double>(p);
            for (std::size_t i = 0; i < gl_.nodes.size(); ++i) {
                const double r = lo + 0.5 * h * (1.0 + gl_.nodes[i]);
                s += 0.5 * h * gl_.weights[i] * f_(r) * kernel_(r * rho) * std::pow(r, N_ - 1.0);
            }
        }
        return s;
    }

    Profile f_;
    double N_;
    ScaledBessel kernel_;
    double cutoff_ = 0.0;
    QuadratureRule gl_;
    QuadratureRule head_;
};

inline double radial_dunkl_transform(const RadialDunklTransform::Profile& f, const DunklParams& params,
                                     double rho, BesselOrderChoice order = BesselOrderChoice::homogeneous) {
    return RadialDunklTransform(f, params, order)(rho);
}

} // namespace dispersive
