#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <variant>

#include "dispersive/core/error.hpp"

namespace dispersive {

inline constexpr double infinity = std::numeric_limits<double>::infinity();

// Euclidean propagator of degree m in dimension d with Hessian rank M.
struct EuclideanContext {
    int d = 2;
    double m = 2.0;
    int M = 2;
};

// Weighted radial setting: reflection weights of degrees gamma1 (x-block) and
// gamma2 (y-block); homogeneous dimension N = d + 2(gamma1 + gamma2).
struct DunklContext {
    int d = 1;
    double m = 2.0;
    double gamma1 = 0.0;
    double gamma2 = 0.0;
};

using ExponentContext = std::variant<EuclideanContext, DunklContext>;

inline int context_dim(const ExponentContext& c) {
    return std::visit([](const auto& v) { return v.d; }, c);
}

inline double context_degree(const ExponentContext& c) {
    return std::visit([](const auto& v) { return v.m; }, c);
}

namespace detail {

struct Coefficients {
    double x = 0.0; // multiplies (1/2 - 1/r)
    double y = 0.0; // multiplies (1/2 - 1/rt)
};

// Coefficients of the admissibility inequality (uses M) ...
inline Coefficients admissibility_coefficients(const ExponentContext& c, int k) {
    if (const auto* e = std::get_if<EuclideanContext>(&c))
        return {static_cast<double>(e->M - k), static_cast<double>(k)};
    const auto& w = std::get<DunklContext>(c);
    return {w.d + 2.0 * w.gamma1 - k, k + 2.0 * w.gamma2};
}

// ... and of the scaling identity (uses d).
inline Coefficients scaling_coefficients(const ExponentContext& c, int k) {
    if (const auto* e = std::get_if<EuclideanContext>(&c))
        return {static_cast<double>(e->d - k), static_cast<double>(k)};
    const auto& w = std::get<DunklContext>(c);
    return {w.d + 2.0 * w.gamma1 - k, k + 2.0 * w.gamma2};
}

inline double inv(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

} // namespace detail

// (q, r, rt, s, k) with 2 < q <= inf and 2 <= rt <= r < inf enforced here.
class ExponentSelection {
public:
    ExponentSelection(double q, double r, double rt, double s, int k, ExponentContext ctx)
        : q_(q), r_(r), rt_(rt), s_(s), k_(k), ctx_(ctx) {
        if (!(q > 2.0))
            throw StructuralError("time exponent must satisfy 2 < q <= inf");
        if (!(rt >= 2.0) || !(rt <= r) || !std::isfinite(r))
            throw StructuralError("space exponents must satisfy 2 <= rt <= r < inf");
        if (!std::isfinite(s))
            throw StructuralError("regularity must be finite");
        if (k < 1 || k > context_dim(ctx))
            throw StructuralError("split k must satisfy 1 <= k <= d");
    }

    double q() const noexcept { return q_; }
    double r() const noexcept { return r_; }
    double rt() const noexcept { return rt_; }
    double s() const noexcept { return s_; }
    int k() const noexcept { return k_; }
    const ExponentContext& context() const noexcept { return ctx_; }

private:
    double q_, r_, rt_, s_;
    int k_;
    ExponentContext ctx_;
};

// Fixed-time decay rate beta(r, rt) = A (1/2 - 1/r) + B (1/2 - 1/rt) with the
// admissibility coefficients; beta(inf, inf) = M/2 and beta(inf, 2) = (M-k)/2.
inline double decay_rate(const ExponentContext& ctx, int k, double r, double rt) {
    const auto c = detail::admissibility_coefficients(ctx, k);
    return c.x * (0.5 - detail::inv(r)) + c.y * (0.5 - detail::inv(rt));
}

enum class Admissibility { strict, boundary, rejected };

struct AdmissibilityVerdict {
    Admissibility kind = Admissibility::rejected;
    double lhs = 0.0;      // 2/q
    double rhs = 0.0;      // decay rate
    double residual = 0.0; // rhs - lhs
    std::string reason;
};

inline const char* to_string(Admissibility a) {
    switch (a) {
    case Admissibility::strict: return "admissible-strict";
    case Admissibility::boundary: return "admissible-boundary";
    default: return "rejected";
    }
}

inline AdmissibilityVerdict check_admissible(const ExponentSelection& sel, double tol = 1e-12) {
    AdmissibilityVerdict v;
    v.lhs = 2.0 * detail::inv(sel.q());
    v.rhs = decay_rate(sel.context(), sel.k(), sel.r(), sel.rt());
    v.residual = v.rhs - v.lhs;
    if (std::abs(v.residual) <= tol) {
        v.kind = Admissibility::boundary;
    } else if (v.residual > 0.0) {
        v.kind = Admissibility::strict;
    } else {
        v.kind = Admissibility::rejected;
        v.reason = "2/q exceeds the decay rate by " + std::to_string(-v.residual);
    }
    return v;
}

// m/q - (-s + A (1/2 - 1/r) + B (1/2 - 1/rt)); zero when scaling holds.
inline double scaling_residual(const ExponentSelection& sel) {
    const auto c = detail::scaling_coefficients(sel.context(), sel.k());
    const double m = context_degree(sel.context());
    return m * detail::inv(sel.q()) -
           (-sel.s() + c.x * (0.5 - detail::inv(sel.r())) + c.y * (0.5 - detail::inv(sel.rt())));
}

enum class ScalingUnknown { q, r, rt, s, r_diagonal };

// One unknown among (q, r, rt, s); r_diagonal solves for r = rt jointly.
struct ScalingProblem {
    ExponentContext context;
    int k = 1;
    double q = infinity;
    double r = 2.0;
    double rt = 2.0;
    double s = 0.0;
    ScalingUnknown unknown = ScalingUnknown::q;
};

struct ScalingSolution {
    bool feasible = false;
    double value = 0.0;
    std::string reason;
    std::optional<ExponentSelection> selection;
};

inline ScalingSolution solve_scaling(const ScalingProblem& p) {
    const auto c = detail::scaling_coefficients(p.context, p.k);
    const double m = context_degree(p.context);
    const double iq = detail::inv(p.q), ir = detail::inv(p.r), irt = detail::inv(p.rt);
    ScalingSolution out;
    // Identity: m iq + s + A ir + B irt = (A + B)/2.
    const double half = 0.5 * (c.x + c.y);
    double q = p.q, r = p.r, rt = p.rt, s = p.s;
    switch (p.unknown) {
    case ScalingUnknown::q: {
        const double x = (half - p.s - c.x * ir - c.y * irt) / m;
        if (x < -1e-15 || x >= 0.5) {
            out.reason = "solved 1/q = " + std::to_string(x) + " outside [0, 1/2)";
            return out;
        }
        q = x <= 0.0 ? infinity : 1.0 / x;
        out.value = q;
        break;
    }
    case ScalingUnknown::r: {
        if (c.x == 0.0)
            throw DegenerateEquationError("r does not enter the scaling identity (d = k)");
        const double x = (half - p.s - m * iq - c.y * irt) / c.x;
        if (!(x > 0.0) || x > 0.5) {
            out.reason = "solved 1/r = " + std::to_string(x) + " outside (0, 1/2]";
            return out;
        }
        r = 1.0 / x;
        out.value = r;
        break;
    }
    case ScalingUnknown::rt: {
        if (c.y == 0.0)
            throw DegenerateEquationError("rt does not enter the scaling identity");
        const double x = (half - p.s - m * iq - c.x * ir) / c.y;
        if (!(x > 0.0) || x > 0.5) {
            out.reason = "solved 1/rt = " + std::to_string(x) + " outside (0, 1/2]";
            return out;
        }
        rt = 1.0 / x;
        out.value = rt;
        break;
    }
    case ScalingUnknown::r_diagonal: {
        if (c.x + c.y == 0.0)
            throw DegenerateEquationError("r = rt does not enter the scaling identity");
        const double x = (half - p.s - m * iq) / (c.x + c.y);
        if (!(x > 0.0) || x > 0.5) {
            out.reason = "solved 1/r = " + std::to_string(x) + " outside (0, 1/2]";
            return out;
        }
        r = rt = 1.0 / x;
        out.value = r;
        break;
    }
    case ScalingUnknown::s:
        s = half - m * iq - c.x * ir - c.y * irt;
        out.value = s;
        break;
    }
    try {
        out.selection.emplace(q, r, rt, s, p.k, p.context);
    } catch (const StructuralError& e) {
        out.reason = e.what();
        return out;
    }
    out.feasible = true;
    return out;
}

} // namespace dispersive
