#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "dispersive/core/error.hpp"

namespace dispersive {

// The upper end of the epsilon window carries a factor (d-2)/m^2 as printed;
// the m_linear variant uses (d-2)/m instead.
enum class WindowVariant { m_squared, m_linear };

struct PicardExponentOptions {
    WindowVariant window = WindowVariant::m_squared;
    bool allow_m_equal_2 = false; // relax m > 2 to m >= 2
};

// Exponents for the contraction argument with y in R^2:
//   1/r1 = 1/(p+1),  1/rt1 = 1/2 - eps/(p+1),
// and q1 fixed by m/q1 + (d-2)/r1 + 2/rt1 = d/2. The closed form
//   1/q1 = (d-2)/(2m) - (d-2)/(m(p+1)) + m eps/(2(p+1))
// agrees with that identity only for m = 2; both are reported.
struct PicardExponents {
    bool feasible = false;
    std::string reason;
    double eps_lower = 0.0;
    double eps_upper = 0.0;
    double eps = 0.0;
    double q1 = 0.0;
    double r1 = 0.0;
    double rt1 = 0.0;
    double beta1 = 0.0;         // 1 - (p+1)/q1
    double q1_closed_form = 0.0;
    double beta1_closed_form = 0.0;
    double identity_residual = 0.0;             // of (q1, r1, rt1)
    double closed_form_identity_residual = 0.0; // of (q1_closed_form, r1, rt1)
    bool closed_form_agrees = false;            // within 1e-12
};

inline double picard_identity_residual(int d, double m, double q1, double r1, double rt1) {
    return m / q1 + (d - 2.0) / r1 + 2.0 / rt1 - 0.5 * d;
}

inline PicardExponents picard_exponents(int d, double m, double s, double p,
                                        PicardExponentOptions opt = {}) {
    if (d < 3)
        throw StructuralError("the contraction exponents need d >= 3");
    if (!(s > 0.0 && s <= 1.0))
        throw StructuralError("regularity must satisfy 0 < s <= 1");
    if (opt.allow_m_equal_2 ? !(m >= 2.0) : !(m > 2.0))
        throw StructuralError(opt.allow_m_equal_2 ? "degree must satisfy m >= 2"
                                                  : "degree must satisfy m > 2");
    if (!(p > 1.0 && p < 1.0 + 2.0 * m / (d - 2.0 * s)))
        throw StructuralError("growth exponent must satisfy 1 < p < 1 + 2m/(d-2s)");

    PicardExponents out;
    const double dm2 = d - 2.0;
    const double factor = opt.window == WindowVariant::m_squared ? dm2 / (m * m) : dm2 / m;
    out.eps_lower = (1.0 - s) * (p - 1.0) / 2.0;
    out.eps_upper = std::min(factor * (1.0 + 2.0 * m / dm2 - p), (p - 1.0) / 2.0);
    if (!(out.eps_lower < out.eps_upper)) {
        out.reason = "empty epsilon window (" + std::to_string(out.eps_lower) + ", " +
                     std::to_string(out.eps_upper) + ")";
        return out;
    }
    out.eps = 0.5 * (out.eps_lower + out.eps_upper);
    out.r1 = p + 1.0;
    out.rt1 = 1.0 / (0.5 - out.eps / (p + 1.0));

    const double inv_q1 = dm2 / (2.0 * m) - dm2 / (m * (p + 1.0)) + 2.0 * out.eps / (m * (p + 1.0));
    const double inv_q1_cf = dm2 / (2.0 * m) - dm2 / (m * (p + 1.0)) + m * out.eps / (2.0 * (p + 1.0));
    if (!(inv_q1 > 0.0 && inv_q1 < 0.5)) {
        out.reason = "derived 1/q1 = " + std::to_string(inv_q1) + " outside (0, 1/2)";
        return out;
    }
    out.q1 = 1.0 / inv_q1;
    out.q1_closed_form = 1.0 / inv_q1_cf;
    out.beta1 = 1.0 - (p + 1.0) / out.q1;
    out.beta1_closed_form = 1.0 - (p + 1.0) / out.q1_closed_form;
    out.identity_residual = picard_identity_residual(d, m, out.q1, out.r1, out.rt1);
    out.closed_form_identity_residual =
        picard_identity_residual(d, m, out.q1_closed_form, out.r1, out.rt1);
    out.closed_form_agrees = std::abs(inv_q1 - inv_q1_cf) <= 1e-12;
    if (!(out.beta1 > 0.0)) {
        out.reason = "time exponent beta1 = " + std::to_string(out.beta1) + " is not positive";
        return out;
    }
    out.feasible = true;
    return out;
}

} // namespace dispersive
