#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "dispersive/core/error.hpp"

namespace dispersive {

using json = nlohmann::ordered_json;

enum class Verdict { pass, fail };

inline const char* to_string(Verdict v) { return v == Verdict::pass ? "PASS" : "FAIL"; }

struct CaseResult {
    std::string id;
    json inputs;
    json measured;
    json predicted;
    std::string anchor; // the law the predicted value comes from
    Verdict verdict = Verdict::fail;
};

// A two-column series written as its own CSV.
struct PlotSeries {
    std::string name;
    std::string x_label;
    std::string y_label;
    std::vector<std::pair<double, double>> points;
};

struct ResultRecord {
    std::string suite;
    std::string config_hash;
    std::uint64_t seed = 0;
    std::vector<CaseResult> cases;
    json observations = json::array(); // recorded, never asserted
    std::vector<PlotSeries> plots;
    std::vector<std::pair<std::string, std::string>> tables; // extra CSV files: name, contents
    double wall_clock_s = 0.0;

    void add(CaseResult c) {
        if (c.anchor.empty())
            throw StructuralError("case " + c.id + " has no anchor for its predicted value");
        cases.push_back(std::move(c));
    }

    void add(std::string id, json inputs, json measured, json predicted, std::string anchor, bool ok) {
        add(CaseResult{std::move(id), std::move(inputs), std::move(measured), std::move(predicted),
                       std::move(anchor), ok ? Verdict::pass : Verdict::fail});
    }

    void observe(std::string id, json value, std::string note) {
        observations.push_back({{"id", std::move(id)}, {"value", std::move(value)}, {"note", std::move(note)}});
    }

    bool all_pass() const {
        for (const auto& c : cases)
            if (c.verdict != Verdict::pass)
                return false;
        return true;
    }

    std::size_t failures() const {
        std::size_t n = 0;
        for (const auto& c : cases)
            n += c.verdict != Verdict::pass;
        return n;
    }
};

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    return out + "\"";
}

inline std::string scalar_text(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

} // namespace detail

// Case table without timing data, so identical runs give identical bytes.
inline std::string cases_csv(const ResultRecord& r) {
    std::ostringstream os;
    os << "id,verdict,measured,predicted,anchor,inputs\n";
    for (const auto& c : r.cases)
        os << detail::csv_field(c.id) << ',' << to_string(c.verdict) << ','
           << detail::csv_field(detail::scalar_text(c.measured)) << ','
           << detail::csv_field(detail::scalar_text(c.predicted)) << ',' << detail::csv_field(c.anchor)
           << ',' << detail::csv_field(c.inputs.dump()) << '\n';
    return os.str();
}

inline std::string plot_csv(const PlotSeries& p) {
    std::ostringstream os;
    os.precision(17);
    os << p.x_label << ',' << p.y_label << '\n';
    for (const auto& [x, y] : p.points)
        os << x << ',' << y << '\n';
    return os.str();
}

inline json summary_json(const ResultRecord& r) {
    json cases = json::array();
    for (const auto& c : r.cases)
        cases.push_back({{"id", c.id},
                         {"inputs", c.inputs},
                         {"measured", c.measured},
                         {"predicted", c.predicted},
                         {"anchor", c.anchor},
                         {"verdict", to_string(c.verdict)}});
    return {{"suite", r.suite},   {"config_hash", r.config_hash}, {"seed", r.seed},
            {"cases", cases},     {"observations", r.observations}, {"wall_clock_s", r.wall_clock_s}};
}

// <dir>/<suite>.csv, <dir>/<suite>_summary.json and one CSV per plot or table.
inline void write_record(const ResultRecord& r, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    auto put = [&](const std::string& name, const std::string& text) {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out)
            throw ConfigError("cannot write " + (dir / name).string());
        out << text;
    };
    put(r.suite + ".csv", cases_csv(r));
    put(r.suite + "_summary.json", summary_json(r).dump(2) + "\n");
    for (const auto& p : r.plots)
        put(r.suite + "_" + p.name + ".csv", plot_csv(p));
    for (const auto& [name, text] : r.tables)
        put(r.suite + "_" + name + ".csv", text);
}

} // namespace dispersive
