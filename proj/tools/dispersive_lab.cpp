#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "dispersive/dispersive.hpp"

namespace {

struct Options {
    std::string config;
    std::string out = "results";
    std::optional<std::uint64_t> seed;
    unsigned jobs = 1;
};

int run(const std::string& suite, const Options& o) {
    using namespace dispersive;
    ExperimentConfig cfg;
    try {
        cfg = o.config.empty() ? parse_config(suite, json()) : load_config(suite, o.config);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }
    if (o.seed)
        cfg.seed = *o.seed;
    cfg.jobs = o.jobs;

    ResultRecord rec;
    try {
        rec = run_suite(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }
    write_record(rec, o.out);
    for (const auto& c : rec.cases)
        std::printf("%s  %s\n", to_string(c.verdict), c.id.c_str());
    std::printf("%s: %zu cases, %zu failed, %.1f s, config %s -> %s\n", suite.c_str(), rec.cases.size(),
                rec.failures(), rec.wall_clock_s, rec.config_hash.c_str(), o.out.c_str());
    return rec.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical checks for dispersive estimates"};
    app.require_subcommand(1);
    std::vector<std::pair<std::string, Options>> subs;
    const std::vector<std::pair<const char*, const char*>> suites = {
        {"decay", "kernel decay fits and Hessian rank probes"},
        {"strichartz", "scaling invariance and boundedness of the Strichartz ratio"},
        {"wellposed", "Picard iteration and the existence time"},
        {"dunkl", "weighted radial transform, Bessel checks and oscillatory decay"},
        {"admissible", "admissible exponent regions on a rational lattice"}};
    subs.reserve(suites.size());
    for (const auto& [name, help] : suites) {
        subs.emplace_back(name, Options{});
        auto& o = subs.back().second;
        auto* sc = app.add_subcommand(name, help);
        sc->add_option("--config", o.config, "JSON config file")->check(CLI::ExistingFile);
        sc->add_option("--out", o.out, "output directory")->capture_default_str();
        sc->add_option("--seed", o.seed, "override the config seed");
        sc->add_option("--jobs", o.jobs, "worker threads, 0 for all cores")->capture_default_str();
    }
    CLI11_PARSE(app, argc, argv);
    for (auto& [name, o] : subs)
        if (app.got_subcommand(name))
            return run(name, o);
    return 2;
}
