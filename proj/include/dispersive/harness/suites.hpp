#pragma once

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "dispersive/core/parallel.hpp"
#include "dispersive/dunkl/h_envelope.hpp"
#include "dispersive/dunkl/oscillatory.hpp"
#include "dispersive/harness/config.hpp"
#include "dispersive/harness/strichartz.hpp"
#include "dispersive/kernel/hessian_rank.hpp"
#include "dispersive/kernel/verify.hpp"
#include "dispersive/solver/picard.hpp"

namespace dispersive {

namespace detail {

inline json exponent_json(double p) { return std::isinf(p) ? json("inf") : json(p); }

inline Symbol symbol_from(const json& item) {
    const std::string kind = item.value("symbol", std::string("power"));
    const int d = item.value("d", 2);
    const int k = item.value("k", 1);
    if (kind == "power")
        return fractional_power_symbol(item.value("degree", 2.0), d, k);
    if (kind == "wave")
        return wave_symbol(d, k);
    if (kind == "biharmonic")
        return biharmonic_symbol(d, k);
    throw ConfigError("unknown symbol kind '" + kind + "'");
}

inline ResultRecord new_record(const std::string& suite, const ExperimentConfig& cfg) {
    ResultRecord r;
    r.suite = suite;
    r.config_hash = cfg.hash();
    r.seed = cfg.seed;
    return r;
}

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

} // namespace detail

inline ResultRecord run_decay_suite(const ExperimentConfig& cfg) {
    const detail::Stopwatch clock;
    const auto& P = cfg.params;
    auto rec = detail::new_record("decay", cfg);
    DecayOptions opt;
    opt.t_min = P["t_min"].get<double>();
    opt.t_max = P["t_max"].get<double>();
    opt.samples = P["samples"].get<std::size_t>();
    opt.n_min = P["n_min"].get<std::size_t>();
    opt.eta_samples = P["eta_samples"].get<std::size_t>();
    opt.tolerance = P["tolerance"].get<double>();
    opt.window_tolerance = P["window_tolerance"].get<double>();
    opt.jobs = cfg.jobs;

    for (const auto& c : P["cases"]) {
        const Symbol phi = detail::symbol_from(c);
        const std::string pair = c.value("pair", std::string("inf,inf"));
        if (pair != "inf,inf" && pair != "inf,2")
            throw ConfigError("decay pair must be \"inf,inf\" or \"inf,2\"");
        const double rt = pair == "inf,inf" ? infinity : 2.0;
        const int k = c.value("k", 1);
        const auto v = verify_decay_rates(phi, infinity, rt, k, opt);
        const std::string id = "decay " + phi.name() + " d=" + std::to_string(phi.dim()) +
                               " k=" + std::to_string(k) + " (" + pair + ")";
        const std::string anchor = rt == 2.0
            ? "frozen-y-frequency kernel decays like (1+|t|)^{-(M-k)/2}, M the Hessian rank"
            : "frequency-localized kernel decays like (1+|t|)^{-M/2}, M the Hessian rank";
        rec.add(id, c, {{"exponent", v.fitted}, {"max_residual", v.fit.max_residual},
                        {"shifted_exponent", v.shifted_fit.exponent}, {"pre_asymptotic", v.pre_asymptotic}},
                v.predicted, anchor, v.pass);
        rec.observe(id + " window",
                    {{"window", {opt.t_min, opt.t_max}},
                     {"shifted_window", {v.shifted_fit.t_min, v.shifted_fit.t_max}},
                     {"exponent", v.fitted}, {"shifted_exponent", v.shifted_fit.exponent},
                     {"shifted_window_full", v.shifted_window_full}},
                    v.pre_asymptotic ? "window sensitivity above tolerance: pre-asymptotic contamination"
                                     : "window sensitivity within tolerance");
        std::ostringstream name;
        name << "kernel_sup_" << rec.plots.size();
        rec.plots.push_back({name.str(), "t", "sup", v.samples});
    }

    const auto points = P["rank_points"].get<std::size_t>();
    for (const auto& c : P["rank_probes"]) {
        const Symbol phi = detail::symbol_from(c);
        const auto eta = c.value("frozen_eta", std::vector<double>{});
        const bool frozen = !eta.empty();
        if (frozen && static_cast<int>(eta.size()) != phi.split())
            throw ConfigError("frozen_eta must have k entries");
        const auto probe = probe_hessian_rank(phi, frozen ? HessianMode::frozen(eta) : HessianMode::full(), points);
        const int expected = frozen ? phi.restricted_rank() : phi.hessian_rank();
        const auto [lo, hi] = std::minmax_element(probe.ranks.begin(), probe.ranks.end());
        const bool ok = *lo == expected && *hi == expected && !probe.smoothness_warning;
        rec.add("rank " + phi.name() + " d=" + std::to_string(phi.dim()) + (frozen ? " frozen eta" : ""), c,
                {{"min_rank", *lo}, {"max_rank", *hi}, {"violations", probe.violations(expected)},
                 {"smoothness_warning", probe.smoothness_warning}},
                expected,
                frozen ? "Hessian of xi -> Phi(xi, eta) at fixed |eta| <= 2 has rank >= M - k"
                       : "Hessian of Phi has rank >= M on the unit sphere",
                ok);
    }
    rec.wall_clock_s = clock.seconds();
    return rec;
}

inline ResultRecord run_strichartz_suite(const ExperimentConfig& cfg) {
    const detail::Stopwatch clock;
    const auto& P = cfg.params;
    auto rec = detail::new_record("strichartz", cfg);
    const int d = P["d"].get<int>(), k = P["k"].get<int>();
    const double m = P["m"].get<double>();
    const double T = P["t_max"].get<double>();
    const int band_min = P["band_min"].get<int>(), band_max = P["band_max"].get<int>();
    if (band_min > band_max)
        throw ConfigError("band_min exceeds band_max");
    auto expo = [&](const char* key) {
        return P[key].is_string() && P[key].get<std::string>() == "inf" ? infinity : P[key].get<double>();
    };
    const Symbol phi = fractional_power_symbol(m, d, k);
    const EuclideanContext ctx{d, m, phi.hessian_rank()};
    std::optional<ExponentSelection> sel;
    try {
        sel.emplace(expo("q"), expo("r"), expo("rt"), P["s"].get<double>(), k, ctx);
    } catch (const StructuralError& e) {
        throw ConfigError(std::string("invalid exponent selection: ") + e.what());
    }
    const auto adm = check_admissible(*sel);
    if (adm.kind == Admissibility::rejected)
        throw ConfigError("selection is not admissible: " + adm.reason);
    if (std::abs(scaling_residual(*sel)) > 1e-12)
        throw ConfigError("selection violates the scaling identity by " +
                          std::to_string(scaling_residual(*sel)));
    const json sel_json = {{"q", detail::exponent_json(sel->q())}, {"r", detail::exponent_json(sel->r())},
                           {"rt", detail::exponent_json(sel->rt())}, {"s", sel->s()}, {"d", d}, {"k", k}, {"m", m}};
    auto packet_inputs = [&](std::size_t i, const WavePacket& p) {
        return json{{"member", i}, {"band", p.band}, {"width", p.width}, {"carrier", p.carrier}};
    };

    // Plancherel selection (q, r, rt, s) = (inf, 2, 2, 0).
    const ExponentSelection trivial(infinity, 2.0, 2.0, 0.0, k, ctx);
    const auto n_triv = P["trivial_packets"].get<std::size_t>();
    std::vector<double> triv(n_triv);
    parallel_for(n_triv, cfg.jobs, [&](std::size_t i) {
        const auto p = family_packet(cfg.seed, i, d, band_min, band_max);
        triv[i] = strichartz_ratio(sample_packet(p, packet_grid(p, d, k, 1.1)), phi, trivial, T);
    });
    double triv_dev = 0.0;
    for (double v : triv)
        triv_dev = std::max(triv_dev, std::abs(v - 1.0));
    rec.add("trivial selection R = 1", {{"packets", n_triv}, {"q", "inf"}, {"r", 2}, {"rt", 2}, {"s", 0}},
            {{"max_abs_deviation", triv_dev}}, 0.0, "Plancherel: the flow is unitary on L^2, so R = 1",
            triv_dev <= P["trivial_tolerance"].get<double>());

    // Dilation invariance.
    const auto n_scal = P["scaling_packets"].get<std::size_t>();
    const double scal_tol = P["scaling_tolerance"].get<double>();
    std::vector<std::array<double, 2>> ratios(n_scal);
    parallel_for(n_scal, cfg.jobs, [&](std::size_t i) {
        const auto p = family_packet(cfg.seed, i, d, band_min, band_max);
        const Field f = sample_packet(p, packet_grid(p, d, k, 2.2));
        const double base = strichartz_ratio(f, phi, *sel, T);
        ratios[i][0] = strichartz_ratio(rescale_field(f, 2.0), phi, *sel, T * std::pow(2.0, -m)) / base;
        ratios[i][1] = strichartz_ratio(rescale_field(f, 0.5), phi, *sel, T * std::pow(0.5, -m)) / base;
    });
    for (std::size_t i = 0; i < n_scal; ++i) {
        const auto p = family_packet(cfg.seed, i, d, band_min, band_max);
        for (int which = 0; which < 2; ++which) {
            const double delta = which == 0 ? 2.0 : 0.5;
            json in = packet_inputs(i, p);
            in["delta"] = delta;
            in["selection"] = sel_json;
            const double v = ratios[i][static_cast<std::size_t>(which)];
            rec.add("scaling member " + std::to_string(i) + " delta=" + (which == 0 ? "2" : "1/2"), in, v, 1.0,
                    "scaling identity m/q = -s + (d-k)(1/2-1/r) + k(1/2-1/rt) makes R invariant under dilation",
                    std::abs(v - 1.0) <= scal_tol);
        }
    }

    // Boundedness surrogate: max R over n members versus 2n members.
    const auto n_fam = P["family_size"].get<std::size_t>();
    if (n_fam == 0) {
        rec.wall_clock_s = clock.seconds();
        return rec;
    }
    std::vector<double> R(2 * n_fam);
    parallel_for(R.size(), cfg.jobs, [&](std::size_t i) {
        const auto p = family_packet(cfg.seed, i, d, band_min, band_max);
        R[i] = strichartz_ratio(sample_packet(p, packet_grid(p, d, k, 1.1)), phi, *sel, T);
    });
    const double max_half = *std::max_element(R.begin(), R.begin() + static_cast<long>(n_fam));
    const double max_full = *std::max_element(R.begin(), R.end());
    const double change = std::abs(max_full - max_half) / max_half;
    rec.add("family maximum stability", {{"family_size", n_fam}, {"doubled", 2 * n_fam}, {"selection", sel_json}},
            {{"max_R", max_half}, {"max_R_doubled", max_full}, {"relative_change", change}},
            P["stability_tolerance"].get<double>(),
            "Strichartz estimate: R is bounded over all data, so its family maximum saturates",
            change <= P["stability_tolerance"].get<double>());
    PlotSeries plot{"ratios", "member", "R", {}};
    for (std::size_t i = 0; i < R.size(); ++i)
        plot.points.emplace_back(static_cast<double>(i), R[i]);
    rec.plots.push_back(std::move(plot));
    rec.wall_clock_s = clock.seconds();
    return rec;
}

inline ResultRecord run_wellposed_suite(const ExperimentConfig& cfg) {
    const detail::Stopwatch clock;
    const auto& P = cfg.params;
    auto rec = detail::new_record("wellposed", cfg);
    const int d = P["d"].get<int>(), k = P["k"].get<int>();
    const double m = P["m"].get<double>(), p = P["p"].get<double>(), s = P["s"].get<double>();
    const std::string window = P["window"].get<std::string>();
    if (window != "m_squared" && window != "m_linear")
        throw ConfigError("window must be \"m_squared\" or \"m_linear\"");
    if (k != 2)
        throw ConfigError("the contraction argument is set up for k = 2");
    PicardExponentOptions popt{window == "m_squared" ? WindowVariant::m_squared : WindowVariant::m_linear,
                               P["allow_m_equal_2"].get<bool>()};
    PicardExponents ex;
    try {
        ex = picard_exponents(d, m, s, p, popt);
    } catch (const StructuralError& e) {
        throw ConfigError(e.what());
    }
    const json inputs = {{"d", d}, {"m", m}, {"p", p}, {"s", s}, {"k", k}, {"window", window}};
    rec.add("contraction exponents", inputs,
            {{"feasible", ex.feasible}, {"eps", ex.eps}, {"q1", ex.q1}, {"r1", ex.r1}, {"rt1", ex.rt1},
             {"beta1", ex.beta1}, {"identity_residual", ex.identity_residual}, {"reason", ex.reason}},
            0.0, "exponent identity m/q1 + (d-2)/r1 + 2/rt1 = d/2",
            ex.feasible && std::abs(ex.identity_residual) <= 1e-12);
    rec.observe("closed-form time exponent",
                {{"q1", ex.q1_closed_form}, {"beta1", ex.beta1_closed_form},
                 {"identity_residual", ex.closed_form_identity_residual}, {"agrees", ex.closed_form_agrees}},
                "closed form for 1/q1 with the m eps / (2(p+1)) term, reported beside the identity-derived value");
    if (!ex.feasible) {
        rec.wall_clock_s = clock.seconds();
        return rec;
    }

    const std::string form = P["form"].get<std::string>();
    if (form != "preserving" && form != "plain")
        throw ConfigError("form must be \"preserving\" or \"plain\"");
    const NonlinearSpec spec(p, form == "preserving" ? PowerForm::preserving : PowerForm::plain,
                             P["lambda"].get<double>());
    const GridSpec g(d, k, P["half_length"].get<double>(), P["n"].get<std::size_t>());
    PicardSetup S{fractional_power_symbol(m, d, k), g, spec, ex, s, k, P["nodes"].get<std::size_t>(),
                  P["max_iters"].get<std::size_t>()};
    const double amp = P["amplitude"].get<double>();
    const Field f = Field::sample(g, [&](std::span<const double> x) {
        double r2 = 0.0;
        for (double v : x)
            r2 += v * v;
        return cplx(amp * std::exp(-0.5 * r2), 0.0);
    });
    const int lo = P["exp_lo"].get<int>(), hi = P["exp_hi"].get<int>();
    json run_in = inputs;
    run_in["n"] = g.points();
    run_in["half_length"] = g.half_length();
    run_in["amplitude"] = amp;
    run_in["lambda"] = spec.lambda;

    const auto search = existence_time_search(f, S, lo, hi);
    json probes = json::array();
    bool monotone = true;
    for (const auto& pr : search.probes) {
        probes.push_back({{"T", std::ldexp(1.0, pr.exponent)}, {"rho_hat", pr.rho_hat}, {"success", pr.success},
                          {"monotone", pr.monotone}});
        if (pr.converged && !pr.monotone)
            monotone = false;
    }
    rec.add("existence time search", run_in, {{"found", search.found}, {"T_star", search.T_star}, {"probes", probes}},
            "rho_hat <= 1/2 at some dyadic T",
            "contraction criterion 2 C T^{beta1} A^{p-1} <= 1/2 holds for T small enough", search.found);
    rec.add("contraction monotonicity", run_in, monotone, true,
            "Banach iteration: successive differences shrink after the first step", monotone);

    if (search.found) {
        const auto tc = t_scaling_check(f, S, search.T_star, P["margin"].get<double>());
        rec.add("T-scaling", run_in,
                {{"T", tc.T}, {"rho_T", tc.rho_T}, {"rho_half_T", tc.rho_half}, {"exponent", tc.measured_exponent}},
                {{"min_exponent", tc.required_exponent}, {"beta1", ex.beta1}},
                "contraction factor scales like T^{beta1}; halving T divides it by at least 2^{beta1 (1 - margin)}",
                tc.pass);
        const auto rep = picard_solve(f, S, search.T_star);
        rec.observe("chain rule ratio", rep.chain_rule_ratio,
                    "||<D_y>^s F(u)||_2 / (|| |u|^{p-1} ||_inf ||<D_y>^s u||_2), max over nodes; measured, not asserted");
        PlotSeries plot{"differences", "iteration", "distance", {}};
        for (std::size_t i = 0; i < rep.differences.size(); ++i)
            plot.points.emplace_back(static_cast<double>(i), rep.differences[i]);
        rec.plots.push_back(std::move(plot));
    }

    // Linear hook: with lambda = 0 every T converges.
    PicardSetup L = S;
    L.spec = NonlinearSpec(p, spec.form, 0.0);
    const auto lin = existence_time_search(f, L, lo, hi);
    json lin_in = run_in;
    lin_in["lambda"] = 0;
    rec.add("linear problem", lin_in, lin.T_star, std::ldexp(1.0, hi),
            "without the nonlinearity the linear flow is a fixed point for every T",
            lin.found && lin.T_star == std::ldexp(1.0, hi));
    rec.wall_clock_s = clock.seconds();
    return rec;
}

inline ResultRecord run_dunkl_suite(const ExperimentConfig& cfg) {
    const detail::Stopwatch clock;
    const auto& P = cfg.params;
    auto rec = detail::new_record("dunkl", cfg);
    std::mt19937_64 rng(cfg.seed);
    const double pi = std::numbers::pi;

    {
        const BesselJ j(0.5);
        double err = 0.0;
        for (double r : {1.0, 10.0})
            err = std::max(err, std::abs(j(r) - std::sqrt(2.0 / (pi * r)) * std::sin(r)));
        rec.add("J_1/2 closed form", {{"r", {1, 10}}}, err, 1e-10, "J_{1/2}(r) = sqrt(2/(pi r)) sin r", err <= 1e-10);
        const double j00 = BesselJ(0.0)(0.0);
        rec.add("J_0(0)", {{"r", 0}}, j00, 1.0, "J_0(0) = 1", std::abs(j00 - 1.0) <= 1e-15);
    }
    {
        std::uniform_real_distribution<double> nu_d(-0.4, 4.0), r_d(0.5, 60.0);
        const auto pairs = P["bessel_pairs"].get<std::size_t>();
        double worst = 0.0;
        for (std::size_t i = 0; i < pairs; ++i) {
            const double nu = nu_d(rng), r = r_d(rng), h = 1e-5;
            const BesselJ a(nu), b(nu + 1.0);
            const double lhs = (a.scaled(r + h) - a.scaled(r - h)) / (2.0 * h);
            worst = std::max(worst, std::abs(lhs + r * b.scaled(r)));
        }
        rec.add("derivative identity", {{"pairs", pairs}}, worst, 1e-6,
                "d/dr (r^{-nu} J_nu(r)) = -r^{-nu} J_{nu+1}(r)", worst <= 1e-6);
    }
    {
        std::uniform_real_distribution<double> nu_d(-0.45, 5.0), r_d(0.0, 200.0);
        const auto orders = P["bound_orders"].get<std::size_t>(), radii = P["bound_radii"].get<std::size_t>();
        std::size_t violations = 0;
        for (std::size_t i = 0; i < orders; ++i) {
            const BesselJ j(nu_d(rng));
            const double C = j.bound_constant();
            for (std::size_t q = 0; q < radii; ++q) {
                const double r = r_d(rng);
                if (r == 0.0)
                    continue;
                const double env = r < 1.0 ? C * std::pow(r, j.order()) : C / std::sqrt(r);
                violations += std::abs(j(r)) > env;
            }
        }
        rec.add("Bessel envelopes", {{"orders", orders}, {"radii", radii}}, violations, 0,
                "|J_nu(r)| <= C_nu r^nu for r < 1 and <= C_nu r^{-1/2} for r >= 1", violations == 0);
    }

    // Unweighted reduction against the lattice transform of the radial field.
    for (int d : {1, 2, 3}) {
        const GridSpec g(d, 1, 16.0, d == 3 ? 64 : 128);
        const Field f = Field::sample(g, [](std::span<const double> x) {
            double r2 = 0.0;
            for (double v : x)
                r2 += v * v;
            return cplx(std::exp(-0.5 * r2), 0.0);
        });
        const RadialDunklTransform T([](double r) { return std::exp(-0.5 * r * r); }, DunklParams(d, 0.0, 0.0, 1));
        const auto F = forward_values(g, f.values());
        const double scale = std::pow(2.0 * g.half_length(), d) * std::pow(2.0 * pi, -0.5 * d);
        const auto xi2 = squared_frequency_modulus(g);
        double err = 0.0, peak = 0.0;
        for (std::size_t i = 0; i < F.size(); i += (d == 3 ? 37 : 7)) {
            if (xi2[i] > 25.0)
                continue;
            const double want = T(std::sqrt(xi2[i]));
            err = std::max(err, std::abs(scale * F[i] - want));
            peak = std::max(peak, std::abs(want));
        }
        rec.add("unweighted radial transform d=" + std::to_string(d), {{"d", d}, {"gamma", 0}}, err / peak, 1e-6,
                "with zero weights the radial transform is the Euclidean Fourier transform", err / peak <= 1e-6);
    }

    const auto phases = P["phases"].get<std::vector<double>>();
    const auto Ns = P["N"].get<std::vector<double>>();
    DunklDecayOptions dopt;
    dopt.t_min = P["t_min"].get<double>();
    dopt.t_max = P["t_max"].get<double>();
    dopt.samples = P["samples"].get<std::size_t>();
    dopt.tolerance = P["tolerance"].get<double>();
    struct Job {
        double a, N;
        DunklRegime regime;
    };
    std::vector<Job> jobs;
    for (double a : phases)
        for (double N : Ns)
            for (auto reg : {DunklRegime::near, DunklRegime::far})
                jobs.push_back({a, N, reg});
    std::vector<DunklDecayResult> results(jobs.size());
    parallel_for(jobs.size(), cfg.jobs, [&](std::size_t i) {
        const auto& jb = jobs[i];
        results[i] = verify_dunkl_decay(power_phase(jb.a), DunklParams(1, 0.5 * (jb.N - 1.0), 0.0, 1), jb.regime, dopt);
    });
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const auto& jb = jobs[i];
        const auto& r = results[i];
        const bool far = jb.regime == DunklRegime::far;
        std::ostringstream id;
        id << "I decay phi=r^" << jb.a << " N=" << jb.N << (far ? " far" : " near");
        const std::string anchor = far ? "non-stationary regime |x| >= 2 max|phi'| |t| decays faster than any power"
                                   : (power_phase(jb.a).curved()
                                          ? "stationary phase with phi'' != 0: (1+|(x,t)|)^{-N/2}"
                                          : "stationary phase with phi'' = 0: (1+|(x,t)|)^{-(N-1)/2}");
        rec.add(id.str(),
                {{"phase_power", jb.a}, {"N", jb.N}, {"regime", far ? "far" : "near"}, {"ratio", r.ratio}},
                {{"exponent", r.fit.exponent}, {"max_residual", r.fit.max_residual},
                 {"quadrature_error", r.max_quadrature_error}},
                far ? json{{"at_most", r.predicted}} : json(r.predicted), anchor, r.pass);
        rec.plots.push_back({"I_" + std::to_string(i), "|(x,t)|", "|I|", r.samples});
        if (!far && !r.pass) {
            // Small |phi''| delays the stationary-phase regime; refit further out.
            DunklDecayOptions late = dopt;
            late.t_min *= 16.0;
            late.t_max *= 16.0;
            const auto lr = verify_dunkl_decay(power_phase(jb.a), DunklParams(1, 0.5 * (jb.N - 1.0), 0.0, 1),
                                               jb.regime, late);
            rec.observe(id.str() + " late window",
                        {{"window", {late.t_min, late.t_max}}, {"exponent", lr.fit.exponent},
                         {"max_residual", lr.fit.max_residual}, {"predicted", lr.predicted}},
                        "refit over a window 16 times further out, not a verdict");
        }
    }
    {
        DunklDecayOptions o = dopt;
        const auto r = verify_dunkl_decay(power_phase(2.0), DunklParams(2, 0.0, 0.0, 1), DunklRegime::near, o);
        const double tol = P["reduction_tolerance"].get<double>();
        rec.add("unweighted decay d=2", {{"d", 2}, {"gamma", 0}, {"phase_power", 2}}, r.fit.exponent, -1.0,
                "Euclidean Schroedinger kernel decay -d/2", std::abs(r.fit.exponent + 1.0) <= tol);
    }
    for (int d : {2, 3, 4})
        for (int beta = 0; beta <= 4; ++beta) {
            const auto h = h_envelope_check(d, beta);
            rec.add("h envelope d=" + std::to_string(d) + " beta=" + std::to_string(beta), {{"d", d}, {"beta", beta}},
                    {{"envelope", h.envelope}, {"relative_change", h.relative_change}}, "finite, stable within 1%",
                    "|h^(beta)(r)| <= C_beta (1+r)^{-(d-1)/2-beta}", h.stable);
        }
    rec.wall_clock_s = clock.seconds();
    return rec;
}

namespace detail {

inline ExponentContext context_from(const json& c) {
    const std::string kind = c.value("kind", std::string("euclidean"));
    if (kind == "euclidean")
        return EuclideanContext{c.value("d", 2), c.value("m", 2.0), c.value("M", c.value("d", 2))};
    if (kind == "dunkl")
        return DunklContext{c.value("d", 2), c.value("m", 2.0), c.value("gamma1", 0.0), c.value("gamma2", 0.0)};
    throw ConfigError("unknown context kind '" + kind + "'");
}

// Lattice points (a, b, c) with 1/q = a/R, 1/r = b/R, 1/rt = c/R that pass.
inline std::set<std::tuple<int, int, int>> admissible_region(const ExponentContext& ctx, int k, int R,
                                                             std::ostringstream* csv) {
    std::set<std::tuple<int, int, int>> out;
    for (int a = 0; 2 * a < R; ++a)
        for (int b = 1; 2 * b <= R; ++b)
            for (int c = b; 2 * c <= R; ++c) {
                const double q = a == 0 ? infinity : static_cast<double>(R) / a;
                const ExponentSelection sel(q, static_cast<double>(R) / b, static_cast<double>(R) / c, 0.0, k, ctx);
                const auto v = check_admissible(sel);
                if (v.kind == Admissibility::rejected)
                    continue;
                out.emplace(a, b, c);
                if (csv) {
                    ScalingProblem sp{ctx, k, q, sel.r(), sel.rt(), 0.0, ScalingUnknown::s};
                    const auto s = solve_scaling(sp);
                    *csv << static_cast<double>(a) / R << ',' << static_cast<double>(b) / R << ','
                         << static_cast<double>(c) / R << ',' << s.value << ',' << to_string(v.kind) << '\n';
                }
            }
    return out;
}

} // namespace detail

inline ResultRecord run_admissible_suite(const ExperimentConfig& cfg) {
    const detail::Stopwatch clock;
    const auto& P = cfg.params;
    auto rec = detail::new_record("admissible", cfg);
    const int R = P["resolution"].get<int>();
    if (R < 2 || R % 2 != 0)
        throw ConfigError("resolution must be an even integer >= 2");
    std::vector<std::pair<ExponentContext, int>> contexts;
    for (const auto& c : P["contexts"])
        contexts.emplace_back(detail::context_from(c), c.value("k", 1));

    std::size_t idx = 0;
    for (const auto& c : P["contexts"]) {
        const auto& [ctx, k] = contexts[idx];
        std::ostringstream csv;
        csv.precision(17);
        csv << "inv_q,inv_r,inv_rt,s,kind\n";
        const auto region = detail::admissible_region(ctx, k, R, &csv);
        // Round trip: every emitted point re-passes, with its scaling-solved s.
        std::size_t bad = 0;
        for (const auto& [a, b, cc] : region) {
            const double q = a == 0 ? infinity : static_cast<double>(R) / a;
            ScalingProblem sp{ctx, k, q, static_cast<double>(R) / b, static_cast<double>(R) / cc, 0.0, ScalingUnknown::s};
            const auto s = solve_scaling(sp);
            if (!s.feasible || check_admissible(*s.selection).kind == Admissibility::rejected ||
                std::abs(scaling_residual(*s.selection)) > 1e-12)
                ++bad;
        }
        const std::string name = "region_" + std::to_string(idx);
        rec.tables.emplace_back(name, csv.str());
        rec.add("round trip context " + std::to_string(idx), c, {{"points", region.size()}, {"failures", bad}}, 0,
                "every emitted point satisfies 2/q <= beta(r, rt) and the scaling identity", bad == 0);

        // Diagonal slice against 2/q <= d (1/2 - 1/r) for k = 2 Euclidean contexts with M = d.
        if (const auto* e = std::get_if<EuclideanContext>(&ctx); e && k == 2 && e->M == e->d) {
            std::size_t mismatch = 0;
            for (int a = 0; 2 * a < R; ++a)
                for (int b = 1; 2 * b <= R; ++b) {
                    const bool classical = 2 * a <= e->d * (R / 2 - b);
                    mismatch += classical != (region.count({a, b, b}) > 0);
                }
            rec.add("classical diagonal context " + std::to_string(idx), c, mismatch, 0,
                    "r = rt slice equals the region 2/q <= (d-2)(1/2-1/r) + 2(1/2-1/rt)", mismatch == 0);
        }
        // Zero weights collapse onto the Euclidean region with M = d.
        if (const auto* w = std::get_if<DunklContext>(&ctx); w && w->gamma1 == 0.0 && w->gamma2 == 0.0) {
            const auto euclid = detail::admissible_region(EuclideanContext{w->d, w->m, w->d}, k, R, nullptr);
            rec.add("zero-weight collapse context " + std::to_string(idx), c, region == euclid, true,
                    "weighted region with zero weights equals the Euclidean region", region == euclid);
        }
        ++idx;
    }

    // Random selections through solve_scaling.
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto n = P["random_selections"].get<std::size_t>();
    std::size_t solved = 0;
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& [ctx, k] = contexts[static_cast<std::size_t>(u(rng) * contexts.size()) % contexts.size()];
        ScalingProblem sp{ctx, k};
        sp.r = 1.0 / (0.5 * u(rng) + 1e-3);
        sp.rt = 1.0 / std::max(1.0 / sp.r, 0.5 * u(rng));
        sp.s = u(rng) - 0.5;
        sp.unknown = ScalingUnknown::q;
        const auto s = solve_scaling(sp);
        if (!s.feasible)
            continue;
        ++solved;
        worst = std::max(worst, std::abs(scaling_residual(*s.selection)));
    }
    rec.add("random scaling round trip", {{"draws", n}}, {{"solved", solved}, {"max_residual", worst}}, 1e-12,
            "solved exponents satisfy the scaling identity", worst <= 1e-12 && solved > 0);
    rec.wall_clock_s = clock.seconds();
    return rec;
}

inline ResultRecord run_suite(const ExperimentConfig& cfg) {
    if (cfg.suite == "decay")
        return run_decay_suite(cfg);
    if (cfg.suite == "strichartz")
        return run_strichartz_suite(cfg);
    if (cfg.suite == "wellposed")
        return run_wellposed_suite(cfg);
    if (cfg.suite == "dunkl")
        return run_dunkl_suite(cfg);
    if (cfg.suite == "admissible")
        return run_admissible_suite(cfg);
    throw ConfigError("unknown suite '" + cfg.suite + "'");
}

} // namespace dispersive
