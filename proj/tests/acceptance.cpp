// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "dispersive/dispersive.hpp"

using namespace dispersive;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

Field random_field(const GridSpec& g, std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    std::vector<cplx> v(g.size());
    for (auto& x : v)
        x = {n(rng), n(rng)};
    return Field(g, std::move(v));
}

std::string fmt(const char* f, double a) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

const CaseResult* find_case(const ResultRecord& r, const std::string& id) {
    for (const auto& c : r.cases)
        if (c.id == id)
            return &c;
    return nullptr;
}

bool passed(const ResultRecord& r, const std::string& id) {
    const auto* c = find_case(r, id);
    return c && c->verdict == Verdict::pass;
}

std::string failed_ids(const ResultRecord& r) {
    std::string s;
    for (const auto& c : r.cases)
        if (c.verdict != Verdict::pass)
            s += (s.empty() ? "" : "; ") + c.id;
    return s.empty() ? "none" : s;
}

ResultRecord run(const std::string& suite, const char* overrides) {
    return run_suite(parse_config(suite, json::parse(overrides)));
}

Outcome unitarity() {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ut(-5.0, 5.0), um(0.5, 4.0);
    const GridSpec g(2, 1, 10.0, 256);
    double l2 = 0.0, group = 0.0;
    for (int c = 0; c < 100; ++c) {
        const Symbol phi = c % 4 == 0 ? wave_symbol(2, 1)
                         : c % 4 == 1 ? biharmonic_symbol(2, 1)
                                      : fractional_power_symbol(um(rng), 2, 1);
        const Propagator prop(phi, g);
        const Field f = random_field(g, rng);
        // Times on the 2^-20 lattice so t1 + t2 is exact; otherwise its rounding,
        // times a symbol of size 1e6, dominates the defect.
        const double t1 = std::ldexp(std::round(std::ldexp(ut(rng), 20)), -20);
        const double t2 = std::ldexp(std::round(std::ldexp(ut(rng), 20)), -20), n0 = l2_norm(f);
        const Field u1 = prop.apply(f, t1);
        l2 = std::max(l2, std::abs(l2_norm(u1) - n0) / n0);
        group = std::max(group, l2_norm(prop.apply(u1, t2) - prop.apply(f, t1 + t2)) / n0);
    }
    return {l2 <= 1e-12 && group <= 1e-12,
            "L2 defect " + fmt("%.2e", l2) + ", group-law defect " + fmt("%.2e", group) + " (100 cases, d=2, n=256)"};
}

Outcome littlewood_paley() {
    std::mt19937_64 rng(7);
    const GridSpec g(2, 1, 10.0, 64);
    const auto stack = LPStack::for_grid(g);
    const Field f = random_field(g, rng);
    auto F = forward_values(g, f.values());
    F[0] = 0.0;
    const Field f0(g, inverse_values(g, F));

    auto sum = Field::zeros(g);
    double square = 0.0;
    std::vector<Field> parts;
    for (int j = stack.j_min; j <= stack.j_max; ++j) {
        parts.push_back(lp_project(f, j, stack));
        sum = sum + parts.back();
        square += std::pow(l2_norm(parts.back()), 2);
    }
    const double identity = l2_norm(sum - f0) / l2_norm(f0);
    double ortho = 0.0;
    for (int j = stack.j_min; j <= stack.j_max; ++j)
        for (int l = stack.j_min; l <= stack.j_max; ++l)
            if (std::abs(j - l) > 1)
                ortho = std::max(ortho, l2_norm(lp_project(parts[static_cast<std::size_t>(l - stack.j_min)], j, stack)) /
                                            l2_norm(f));

    // Two-sided constant: sup / inf of sum_j psi_j^2 over a dyadic period.
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double rho = 1.0 + i / 100000.0;
        double s = 0.0;
        for (int j = -3; j <= 3; ++j)
            s += std::pow(lp_cutoff(std::ldexp(rho, -j)), 2);
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    const double constant = hi / lo;
    const double field_ratio = std::pow(l2_norm(f0), 2) / square;
    return {identity <= 1e-12 && ortho <= 1e-12 && constant <= 1.01,
            "identity " + fmt("%.2e", identity) + ", cross terms " + fmt("%.2e", ortho) + ", square-function constant " +
                fmt("%.4f", constant) + " (required <= 1.01; random field ratio " + fmt("%.4f", field_ratio) + ")"};
}

Outcome kernel_decay() {
    const auto rec = run("decay", R"({"params": {"rank_probes": []}})");
    std::string d;
    for (const auto& c : rec.cases)
        d += (d.empty() ? "" : ", ") + c.id.substr(6) + " " + fmt("%.3f", c.measured["exponent"].get<double>()) +
             " vs " + fmt("%.2f", c.predicted.get<double>());
    return {rec.all_pass() && rec.cases.size() == 4 && rec.wall_clock_s <= 300.0,
            d + fmt(", %.0f s", rec.wall_clock_s)};
}

Outcome hessian_rank() {
    const auto rec = run("decay", R"({"params": {"cases": []}})");
    return {rec.all_pass() && rec.cases.size() == 6,
            std::to_string(rec.cases.size() - rec.failures()) + "/" + std::to_string(rec.cases.size()) +
                " probes exact at 64 sphere points; failures: " + failed_ids(rec)};
}

Outcome strichartz_scaling() {
    const auto rec = run("strichartz", R"({"params": {"family_size": 0}})");
    double lo = 1e300, hi = 0.0;
    for (const auto& c : rec.cases)
        if (c.id.rfind("scaling", 0) == 0) {
            lo = std::min(lo, c.measured.get<double>());
            hi = std::max(hi, c.measured.get<double>());
        }
    const auto* triv = find_case(rec, "trivial selection R = 1");
    return {rec.all_pass() && rec.cases.size() == 41 && rec.wall_clock_s <= 180.0,
            "R(f_delta)/R(f) in [" + fmt("%.5f", lo) + ", " + fmt("%.5f", hi) + "] over 20 packets x 2 dilations, " +
                "trivial |R-1| " + fmt("%.1e", triv ? triv->measured["max_abs_deviation"].get<double>() : -1.0) +
                fmt(", %.0f s", rec.wall_clock_s)};
}

Outcome strichartz_stability() {
    const auto rec = run("strichartz", R"({"params": {"scaling_packets": 0, "trivial_packets": 0}})");
    const auto* c = find_case(rec, "family maximum stability");
    if (!c)
        return {false, "stability case missing"};
    return {c->verdict == Verdict::pass && rec.wall_clock_s <= 300.0,
            "max R " + fmt("%.5f", c->measured["max_R"].get<double>()) + " -> " +
                fmt("%.5f", c->measured["max_R_doubled"].get<double>()) + " (change " +
                fmt("%.2e", c->measured["relative_change"].get<double>()) + ")" + fmt(", %.0f s", rec.wall_clock_s)};
}

Outcome picard() {
    const auto rec = run("wellposed", "{}");
    const auto* s = find_case(rec, "existence time search");
    const auto* t = find_case(rec, "T-scaling");
    if (!s)
        return {false, "exponents infeasible"};
    std::string d = "T* = " + fmt("%g", s->measured["T_star"].get<double>());
    if (t)
        d += ", halving exponent " + fmt("%.3f", t->measured["exponent"].get<double>()) + " (needs >= " +
             fmt("%.3f", t->predicted["min_exponent"].get<double>()) + ")";
    return {passed(rec, "contraction exponents") && passed(rec, "existence time search") && passed(rec, "T-scaling") &&
                rec.wall_clock_s <= 600.0,
            d + fmt(", %.0f s", rec.wall_clock_s)};
}

Outcome dunkl() {
    const auto rec = run("dunkl", R"({"params": {"phases": [2, 1], "N": [3]}})");
    const std::vector<std::string> ids = {"J_1/2 closed form",      "derivative identity",
                                          "unweighted radial transform d=2", "I decay phi=r^2 N=3 near",
                                          "I decay phi=r^1 N=3 near", "I decay phi=r^2 N=3 far"};
    bool ok = rec.wall_clock_s <= 300.0;
    std::string d;
    for (const auto& id : ids) {
        ok = ok && passed(rec, id);
        if (id.rfind("I decay", 0) == 0) {
            const auto* c = find_case(rec, id);
            d += (d.empty() ? "" : ", ") + id.substr(8) + " " +
                 (c ? fmt("%.3f", c->measured["exponent"].get<double>()) : std::string("missing"));
        }
    }
    return {ok, d + "; failures: " + failed_ids(rec) + fmt(", %.0f s", rec.wall_clock_s)};
}

Outcome admissible() {
    const auto rec = run("admissible", "{}");
    const auto* r = find_case(rec, "random scaling round trip");
    bool diag = true;
    for (const auto& c : rec.cases)
        if (c.id.rfind("classical diagonal", 0) == 0)
            diag = diag && c.verdict == Verdict::pass;
    return {rec.all_pass() && diag && rec.wall_clock_s <= 5.0,
            "round trip max residual " + fmt("%.1e", r ? r->measured["max_residual"].get<double>() : -1.0) +
                ", classical diagonal exact" + fmt(", %.2f s", rec.wall_clock_s)};
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"unitarity and group law", unitarity},
        {"Littlewood-Paley identity, orthogonality, square function", littlewood_paley},
        {"kernel decay exponents", kernel_decay},
        {"Hessian rank probes", hessian_rank},
        {"Strichartz scaling invariance", strichartz_scaling},
        {"Strichartz family stability", strichartz_stability},
        {"Picard contraction", picard},
        {"weighted radial suite", dunkl},
        {"admissibility round trip", admissible},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !o.pass;
        std::printf("%s  criterion %zu: %s -- %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
