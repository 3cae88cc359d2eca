#pragma once

#include <cmath>
#include <vector>

#include "dispersive/core/grid.hpp"

namespace dispersive {

enum class PowerForm { preserving, plain }; // lambda |u|^{p-1} u  or  lambda |u|^p

struct NonlinearSpec {
    double p = 3.0;
    PowerForm form = PowerForm::preserving;
    double lambda = 1.0; // +1 or -1; 0 switches the nonlinearity off

    NonlinearSpec() = default;
    NonlinearSpec(double p_, PowerForm form_, double lambda_) : p(p_), form(form_), lambda(lambda_) {
        if (!(p_ > 1.0) || !std::isfinite(p_))
            throw StructuralError("growth exponent must satisfy p > 1");
        if (lambda_ != 1.0 && lambda_ != -1.0 && lambda_ != 0.0)
            throw StructuralError("lambda must be +1, -1 or 0");
    }

    cplx operator()(cplx u) const {
        const double a = std::abs(u);
        if (a == 0.0 || lambda == 0.0)
            return 0.0;
        if (form == PowerForm::plain)
            return lambda * std::pow(a, p);
        return lambda * std::pow(a, p - 1.0) * u;
    }
};

inline Field evaluate_nonlinearity(const Field& u, const NonlinearSpec& spec) {
    std::vector<cplx> v(u.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = spec(u[i]);
    return Field(u.grid(), std::move(v));
}

} // namespace dispersive
