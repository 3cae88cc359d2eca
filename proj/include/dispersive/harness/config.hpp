#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "dispersive/harness/record.hpp"

namespace dispersive {

inline const std::set<std::string>& suite_names() {
    static const std::set<std::string> names{"decay", "strichartz", "wellposed", "dunkl", "admissible"};
    return names;
}

// Defaults double as the schema: a user file may only name keys that appear
// here, with the same JSON type. Arrays are replaced wholesale; their object
// items may use any key found in the default items.
inline json default_config(const std::string& suite) {
    if (suite == "decay")
        return json::parse(R"({
          "t_min": 4, "t_max": 64, "samples": 16, "n_min": 512, "eta_samples": 33,
          "tolerance": 0.15, "window_tolerance": 0.1, "rank_points": 64,
          "cases": [
            {"symbol": "power", "degree": 2, "d": 2, "k": 1, "pair": "inf,inf"},
            {"symbol": "power", "degree": 4, "d": 2, "k": 1, "pair": "inf,inf"},
            {"symbol": "wave", "degree": 1, "d": 2, "k": 1, "pair": "inf,inf"},
            {"symbol": "power", "degree": 2, "d": 2, "k": 1, "pair": "inf,2"}
          ],
          "rank_probes": [
            {"symbol": "power", "degree": 2, "d": 2, "k": 1, "frozen_eta": []},
            {"symbol": "power", "degree": 2, "d": 3, "k": 1, "frozen_eta": []},
            {"symbol": "power", "degree": 3, "d": 3, "k": 1, "frozen_eta": []},
            {"symbol": "power", "degree": 4, "d": 2, "k": 1, "frozen_eta": []},
            {"symbol": "wave", "degree": 1, "d": 3, "k": 1, "frozen_eta": []},
            {"symbol": "biharmonic", "degree": 4, "d": 3, "k": 1, "frozen_eta": [1.0]}
          ]
        })");
    if (suite == "strichartz")
        return json::parse(R"({
          "d": 2, "k": 1, "m": 2, "q": 4, "r": 4, "rt": 4, "s": 0, "t_max": 8,
          "family_size": 50, "scaling_packets": 20, "trivial_packets": 20,
          "band_min": -2, "band_max": 2,
          "scaling_tolerance": 0.02, "stability_tolerance": 0.05, "trivial_tolerance": 1e-12
        })");
    if (suite == "wellposed")
        return json::parse(R"({
          "d": 3, "m": 3, "p": 3, "s": 1, "k": 2, "n": 64, "half_length": 8, "amplitude": 4,
          "nodes": 17, "max_iters": 60, "window": "m_squared", "allow_m_equal_2": false,
          "form": "preserving", "lambda": 1, "exp_lo": -12, "exp_hi": 4, "margin": 0.3
        })");
    if (suite == "dunkl")
        return json::parse(R"({
          "phases": [1, 2, 3, 0.5], "N": [2, 3, 4, 5], "t_min": 4, "t_max": 64, "samples": 16,
          "tolerance": 0.15, "reduction_tolerance": 0.1, "bessel_pairs": 100,
          "bound_orders": 100, "bound_radii": 100
        })");
    if (suite == "admissible")
        return json::parse(R"({
          "resolution": 48, "random_selections": 10000,
          "contexts": [
            {"kind": "euclidean", "d": 2, "m": 2, "M": 2, "k": 1, "gamma1": 0, "gamma2": 0},
            {"kind": "euclidean", "d": 3, "m": 2, "M": 3, "k": 2, "gamma1": 0, "gamma2": 0},
            {"kind": "euclidean", "d": 4, "m": 2, "M": 4, "k": 2, "gamma1": 0, "gamma2": 0},
            {"kind": "euclidean", "d": 3, "m": 1, "M": 2, "k": 1, "gamma1": 0, "gamma2": 0},
            {"kind": "euclidean", "d": 3, "m": 4, "M": 3, "k": 1, "gamma1": 0, "gamma2": 0},
            {"kind": "dunkl", "d": 2, "m": 2, "M": 2, "k": 1, "gamma1": 0, "gamma2": 0},
            {"kind": "dunkl", "d": 1, "m": 2, "M": 1, "k": 1, "gamma1": 0, "gamma2": 1}
          ]
        })");
    throw ConfigError("unknown suite '" + suite + "'");
}

namespace detail {

inline bool same_kind(const json& a, const json& b) {
    if (a.is_number() && b.is_number())
        return true;
    return a.type() == b.type();
}

inline void merge_checked(json& base, const json& user, const std::string& path) {
    if (!user.is_object())
        throw ConfigError(path + " must be an object");
    for (auto it = user.begin(); it != user.end(); ++it) {
        const std::string key = path.empty() ? it.key() : path + "." + it.key();
        if (!base.contains(it.key()))
            throw ConfigError("unknown key '" + key + "'");
        json& slot = base[it.key()];
        if (!same_kind(slot, *it))
            throw ConfigError("key '" + key + "' has the wrong type");
        if (slot.is_object()) {
            merge_checked(slot, *it, key);
        } else if (slot.is_array() && !slot.empty() && slot.front().is_object()) {
            std::set<std::string> allowed;
            for (const auto& item : slot)
                for (auto f = item.begin(); f != item.end(); ++f)
                    allowed.insert(f.key());
            for (const auto& item : *it) {
                if (!item.is_object())
                    throw ConfigError("items of '" + key + "' must be objects");
                for (auto f = item.begin(); f != item.end(); ++f)
                    if (!allowed.count(f.key()))
                        throw ConfigError("unknown key '" + key + "[]." + f.key() + "'");
            }
            slot = *it;
        } else {
            slot = *it;
        }
    }
}

} // namespace detail

struct ExperimentConfig {
    std::string suite;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
    json params;

    // FNV-1a (64 bit) over the canonical parameter dump and the seed.
    std::string hash() const {
        const std::string text = params.dump() + "#seed=" + std::to_string(seed);
        std::uint64_t h = 1469598103934665603ULL;
        for (unsigned char c : text) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }
};

// A config document is {"suite": name, "seed": u64, "params": {...}}; every
// field is optional and unknown keys are rejected at every level.
inline ExperimentConfig parse_config(const std::string& suite, const json& doc) {
    if (!suite_names().count(suite))
        throw ConfigError("unknown suite '" + suite + "'");
    ExperimentConfig cfg;
    cfg.suite = suite;
    cfg.params = default_config(suite);
    if (doc.is_null())
        return cfg;
    if (!doc.is_object())
        throw ConfigError("config must be a JSON object");
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (it.key() == "suite") {
            if (!it->is_string() || it->get<std::string>() != suite)
                throw ConfigError("config is for suite '" + it->dump() + "', not '" + suite + "'");
        } else if (it.key() == "seed") {
            if (!it->is_number_unsigned())
                throw ConfigError("seed must be an unsigned integer");
            cfg.seed = it->get<std::uint64_t>();
        } else if (it.key() == "params") {
            detail::merge_checked(cfg.params, *it, "params");
        } else {
            throw ConfigError("unknown key '" + it.key() + "'");
        }
    }
    return cfg;
}

inline ExperimentConfig load_config(const std::string& suite, const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(suite, doc);
}

} // namespace dispersive
