#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dispersive/harness/suites.hpp"

using namespace dispersive;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

ExperimentConfig small_admissible(std::uint64_t seed = 1) {
    return parse_config("admissible", json::parse(R"({"seed": )" + std::to_string(seed) + R"(,
        "params": {"resolution": 12, "random_selections": 200}})"));
}

} // namespace

TEST(Config, DefaultsForEverySuite) {
    for (const auto& s : suite_names()) {
        const auto cfg = parse_config(s, json());
        EXPECT_EQ(cfg.suite, s);
        EXPECT_EQ(cfg.seed, 1u);
        EXPECT_TRUE(cfg.params.is_object());
    }
    EXPECT_THROW(parse_config("nonsense", json()), ConfigError);
}

TEST(Config, UnknownKeysAndWrongTypesAreRejected) {
    EXPECT_THROW(parse_config("decay", json::parse(R"({"params": {"t_minimum": 4}})")), ConfigError);
    EXPECT_THROW(parse_config("decay", json::parse(R"({"extra": 1})")), ConfigError);
    EXPECT_THROW(parse_config("decay", json::parse(R"({"params": {"t_min": "four"}})")), ConfigError);
    EXPECT_THROW(parse_config("decay", json::parse(R"({"params": {"cases": [{"symbol": "power", "dd": 2}]}})")),
                 ConfigError);
    EXPECT_THROW(parse_config("decay", json::parse(R"({"suite": "dunkl"})")), ConfigError);
    EXPECT_THROW(parse_config("decay", json::parse(R"({"seed": -3})")), ConfigError);
    EXPECT_THROW(parse_config("decay", json::parse("[1, 2]")), ConfigError);
}

TEST(Config, OverridesMergeIntoDefaults) {
    const auto cfg = parse_config("strichartz", json::parse(R"({"seed": 9, "params": {"q": 8, "family_size": 4}})"));
    EXPECT_EQ(cfg.seed, 9u);
    EXPECT_EQ(cfg.params["q"].get<double>(), 8.0);
    EXPECT_EQ(cfg.params["family_size"].get<int>(), 4);
    EXPECT_EQ(cfg.params["d"].get<int>(), 2);
}

TEST(Config, LoadReportsMissingAndMalformedFiles) {
    EXPECT_THROW(load_config("decay", "/nonexistent/config.json"), ConfigError);
    const auto path = std::filesystem::temp_directory_path() / "dispersive_bad_config.json";
    std::ofstream(path) << "{not json";
    EXPECT_THROW(load_config("decay", path.string()), ConfigError);
    std::filesystem::remove(path);
}

TEST(Config, HashDependsOnParamsAndSeed) {
    const auto a = parse_config("admissible", json());
    auto b = a;
    EXPECT_EQ(a.hash(), b.hash());
    EXPECT_EQ(a.hash().size(), 16u);
    b.seed = 2;
    EXPECT_NE(a.hash(), b.hash());
    auto c = a;
    c.params["resolution"] = 24;
    EXPECT_NE(a.hash(), c.hash());
}

TEST(Record, CasesNeedAnAnchor) {
    ResultRecord r;
    EXPECT_THROW(r.add("x", json::object(), 1.0, 1.0, "", true), StructuralError);
    r.add("x", json::object(), 1.0, 1.0, "identity", true);
    r.add("y", json::object(), 2.0, 1.0, "identity", false);
    EXPECT_FALSE(r.all_pass());
    EXPECT_EQ(r.failures(), 1u);
}

TEST(Record, CsvQuotesSpecialCharacters) {
    ResultRecord r;
    r.suite = "t";
    r.add("a, \"b\"", {{"k", 1}}, "m", 0.5, "law", true);
    const auto csv = cases_csv(r);
    EXPECT_NE(csv.find("\"a, \"\"b\"\"\",PASS,m,0.5,law,"), std::string::npos) << csv;
}

TEST(Record, RepeatedRunsWriteIdenticalCsv) {
    const auto dir = std::filesystem::temp_directory_path() / "dispersive_harness_test";
    std::filesystem::remove_all(dir);
    write_record(run_suite(small_admissible()), dir / "a");
    write_record(run_suite(small_admissible()), dir / "b");
    for (const auto& e : std::filesystem::directory_iterator(dir / "a")) {
        const auto name = e.path().filename();
        if (name.extension() == ".csv") {
            EXPECT_EQ(slurp(e.path()), slurp(dir / "b" / name)) << name;
        }
    }
    const auto summary = json::parse(slurp(dir / "a" / "admissible_summary.json"));
    EXPECT_EQ(summary["suite"], "admissible");
    EXPECT_EQ(summary["config_hash"], small_admissible().hash());
    for (const char* key : {"cases", "wall_clock_s", "observations"})
        EXPECT_TRUE(summary.contains(key)) << key;
    for (const auto& c : summary["cases"])
        for (const char* key : {"id", "inputs", "measured", "predicted", "anchor", "verdict"})
            EXPECT_TRUE(c.contains(key)) << key;
    std::filesystem::remove_all(dir);
}

TEST(Suites, AdmissibleRoundTripPasses) {
    const auto rec = run_suite(small_admissible(4));
    EXPECT_TRUE(rec.all_pass());
    EXPECT_EQ(rec.tables.size(), 7u);
    bool diagonal = false, collapse = false;
    for (const auto& c : rec.cases) {
        diagonal = diagonal || c.id.rfind("classical diagonal", 0) == 0;
        collapse = collapse || c.id.rfind("zero-weight collapse", 0) == 0;
    }
    EXPECT_TRUE(diagonal);
    EXPECT_TRUE(collapse);
}

TEST(Suites, AdmissibleRegionMatchesDirectEnumeration) {
    // d = 2, M = 2, k = 1: 2/q <= (1/2 - 1/r) + (1/2 - 1/rt) on the 1/12 lattice.
    const auto region = detail::admissible_region(EuclideanContext{2, 2.0, 2}, 1, 12, nullptr);
    std::size_t count = 0;
    for (int a = 0; 2 * a < 12; ++a)
        for (int b = 1; 2 * b <= 12; ++b)
            for (int c = b; 2 * c <= 12; ++c)
                if (2 * a <= (6 - b) + (6 - c)) {
                    ++count;
                    EXPECT_TRUE(region.count({a, b, c}));
                }
    EXPECT_EQ(region.size(), count);
}

TEST(Suites, InvalidSelectionsAreConfigErrors) {
    auto cfg = parse_config("strichartz", json::parse(R"({"params": {"q": 2.5}})"));
    EXPECT_THROW(run_suite(cfg), ConfigError); // scaling identity fails
    cfg = parse_config("strichartz", json::parse(R"({"params": {"r": 3, "rt": 4}})"));
    EXPECT_THROW(run_suite(cfg), ConfigError); // rt > r
    cfg = parse_config("decay", json::parse(R"({"params": {"cases": [{"symbol": "cubic"}]}})"));
    EXPECT_THROW(run_suite(cfg), ConfigError);
    cfg = parse_config("wellposed", json::parse(R"({"params": {"window": "wide"}})"));
    EXPECT_THROW(run_suite(cfg), ConfigError);
}

TEST(Suites, WellposedReportsAnEmptyWindowAsAFailedCase) {
    const auto cfg = parse_config("wellposed", json::parse(R"({"params": {"s": 0.01, "p": 3.0124}})"));
    const auto rec = run_suite(cfg);
    ASSERT_EQ(rec.cases.size(), 1u);
    EXPECT_EQ(rec.cases[0].verdict, Verdict::fail);
    EXPECT_FALSE(rec.cases[0].measured["feasible"].get<bool>());
}
