#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "dispersive/norms/mixed_norm.hpp"
#include "dispersive/norms/picard_exponents.hpp"
#include "dispersive/solver/duhamel.hpp"

namespace dispersive {

// Everything except the data and T that a Picard run depends on.
struct PicardSetup {
    Symbol phi;
    GridSpec grid;
    NonlinearSpec spec;
    PicardExponents exponents;
    double s = 1.0;
    int k = 2;
    std::size_t nodes = 17;
    std::size_t max_iters = 60;
    double tolerance = 1e-10; // stop when d(u_n, u_{n+1}) <= tolerance * A
};

struct PicardReport {
    double T = 0.0;
    double A = 0.0;                 // 2 ||linear flow||_X
    std::vector<double> iterate_norms;
    std::vector<double> differences; // d(u_n, u_{n+1})
    double rho_hat = std::numeric_limits<double>::quiet_NaN();
    bool converged = false;
    bool degenerate = false;  // zero data: rho_hat undefined
    bool halving = false;     // every measured ratio <= 1/2
    bool monotone = true;     // differences non-increasing after the first step
    bool stayed_in_ball = true;
    double chain_rule_ratio = 0.0;
    std::optional<std::size_t> diverged_at;
    Trajectory solution;
};

// ||u||_X = || ||<nabla_y>^s u(t)||_{L^{r1}_x L^{rt1}_y} ||_{L^{q1}_t}.
inline double x_norm(const Trajectory& u, const std::vector<double>& times, const PicardSetup& S) {
    std::vector<std::pair<double, double>> samples;
    samples.reserve(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        samples.emplace_back(times[i], mixed_space_norm(y_bessel_potential(u[i], S.s, S.k),
                                                        S.exponents.r1, S.exponents.rt1, S.k));
    return time_norm(samples, S.exponents.q1);
}

// d(u, v) = ||u - v||_{L^{q1}_t L^{r1}_x L^{rt1}_y}, without the y-derivative.
inline double picard_distance(const Trajectory& u, const Trajectory& v, const std::vector<double>& times,
                              const PicardSetup& S) {
    std::vector<std::pair<double, double>> samples;
    samples.reserve(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        samples.emplace_back(times[i], mixed_space_norm(u[i] - v[i], S.exponents.r1, S.exponents.rt1, S.k));
    return time_norm(samples, S.exponents.q1);
}

// Largest ratio ||<nabla_y>^s F(u)||_2 / (|| |u|^{p-1} ||_inf ||<nabla_y>^s u||_2) over the
// nodes: the fractional chain rule with exponents (inf, 2; 2), measured rather than assumed.
inline double chain_rule_ratio(const Trajectory& u, const PicardSetup& S) {
    double worst = 0.0;
    for (const auto& ui : u) {
        const double lip = std::pow(sup_norm(ui), S.spec.p - 1.0);
        const double den = lip * l2_norm(y_bessel_potential(ui, S.s, S.k));
        if (den == 0.0)
            continue;
        worst = std::max(worst, l2_norm(y_bessel_potential(evaluate_nonlinearity(ui, S.spec), S.s, S.k)) / den);
    }
    return worst;
}

// Iterates u_{n+1} = N u_n from the linear flow. A divergence is recorded in the
// report (not thrown) so callers can treat it as a failed probe.
inline PicardReport picard_solve(const Field& f, const PicardSetup& S, double T,
                                 std::optional<double> A_override = std::nullopt) {
    if (!S.exponents.feasible)
        throw StructuralError("Picard exponents are infeasible: " + S.exponents.reason);
    if (!(f.grid() == S.grid))
        throw StructuralError("data grid differs from the solver grid");
    const Propagator prop(S.phi, S.grid);
    const auto times = uniform_times(T, S.nodes);

    PicardReport rep;
    rep.T = T;
    Trajectory u = linear_flow(f, prop, times);
    const double lin = x_norm(u, times, S);
    rep.A = A_override.value_or(2.0 * lin);
    rep.iterate_norms.push_back(lin);
    if (sup_norm(f) == 0.0) {
        rep.degenerate = true;
        rep.converged = true;
        rep.differences.push_back(0.0);
        rep.solution = std::move(u);
        return rep;
    }

    for (std::size_t n = 1; n <= S.max_iters; ++n) {
        Trajectory next;
        try {
            next = duhamel_map(u, f, prop, S.spec, times, n);
        } catch (const DivergenceError& e) {
            rep.diverged_at = e.step();
            break;
        }
        const double dn = picard_distance(next, u, times, S);
        rep.differences.push_back(dn);
        rep.iterate_norms.push_back(x_norm(next, times, S));
        if (rep.iterate_norms.back() > rep.A)
            rep.stayed_in_ball = false;
        u = std::move(next);
        if (dn <= S.tolerance * rep.A) {
            rep.converged = true;
            break;
        }
    }

    // Ratios are taken while both differences sit above the round-off floor.
    const auto& dd = rep.differences;
    const double floor = 1e-13 * rep.A;
    double rho = 0.0;
    bool any = false;
    for (std::size_t i = 1; i < dd.size(); ++i) {
        if (dd[i - 1] <= floor || dd[i] <= floor)
            continue;
        rho = std::max(rho, dd[i] / dd[i - 1]);
        any = true;
        if (i >= 2 && dd[i] > dd[i - 1])
            rep.monotone = false;
    }
    if (any)
        rep.rho_hat = rho;
    if (rep.converged && any && !(rep.rho_hat < 1.0))
        rep.converged = false;
    rep.halving = !std::isnan(rep.rho_hat) && rep.rho_hat <= 0.5;
    rep.chain_rule_ratio = chain_rule_ratio(u, S);
    rep.solution = std::move(u);
    return rep;
}

struct ExistenceProbe {
    int exponent = 0; // T = 2^exponent
    double rho_hat = 0.0;
    bool success = false;
    bool converged = false;
    bool monotone = false;
};

struct ExistenceResult {
    bool found = false;
    double T_star = 0.0;
    std::vector<ExistenceProbe> probes;
};

// Largest dyadic T in [2^lo, 2^hi] whose Picard run converges with rho_hat <= 1/2,
// by bisection on the exponent (success is assumed monotone in T).
inline ExistenceResult existence_time_search(const Field& f, const PicardSetup& S, int lo = -12, int hi = 4) {
    ExistenceResult res;
    auto probe = [&](int e) {
        const auto rep = picard_solve(f, S, std::ldexp(1.0, e));
        const bool ok = rep.converged && (rep.degenerate || std::isnan(rep.rho_hat) || rep.rho_hat <= 0.5);
        res.probes.push_back({e, rep.rho_hat, ok, rep.converged, rep.monotone});
        return ok;
    };
    if (probe(hi)) {
        res.found = true;
        res.T_star = std::ldexp(1.0, hi);
        return res;
    }
    if (!probe(lo))
        return res;
    int good = lo, bad = hi;
    while (bad - good > 1 && res.probes.size() < 12) {
        const int mid = good + (bad - good) / 2;
        if (probe(mid))
            good = mid;
        else
            bad = mid;
    }
    res.found = true;
    res.T_star = std::ldexp(1.0, good);
    return res;
}

struct TScalingCheck {
    double T = 0.0;
    double rho_T = 0.0;
    double rho_half = 0.0;
    double measured_exponent = 0.0; // log2(rho(T) / rho(T/2))
    double required_exponent = 0.0; // (1 - margin) beta1
    bool pass = false;
};

// Halving T must shrink rho_hat by at least 2^{beta1 (1 - margin)}; A is held
// at its value for T.
inline TScalingCheck t_scaling_check(const Field& f, const PicardSetup& S, double T, double margin = 0.3) {
    TScalingCheck c;
    c.T = T;
    const auto full = picard_solve(f, S, T);
    const auto half = picard_solve(f, S, 0.5 * T, full.A);
    c.rho_T = full.rho_hat;
    c.rho_half = half.rho_hat;
    c.required_exponent = (1.0 - margin) * S.exponents.beta1;
    c.measured_exponent = std::log2(c.rho_T / c.rho_half);
    c.pass = std::isfinite(c.measured_exponent) && c.measured_exponent >= c.required_exponent;
    return c;
}

} // namespace dispersive
