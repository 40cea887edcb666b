#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "core/error.hpp"
#include "harness/checks.hpp"
#include "harness/commands.hpp"
#include "harness/config.hpp"
#include "harness/report.hpp"

using namespace softqed;
using namespace softqed::harness;

namespace {

ErrorCode parse_code(const std::string& text) {
    try {
        (void)parse_config(text);
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Config, EmptyObjectGivesDefaults) {
    const auto c = parse_config("{}");
    EXPECT_EQ(c.seed, 42u);
    EXPECT_EQ(c.loop.size(), 3u);
    EXPECT_TRUE(c.tolerances.empty());
}

TEST(Config, StrictKeys) {
    EXPECT_EQ(parse_code(R"({"sed": 1})"), ErrorCode::ConfigParse);
    EXPECT_EQ(parse_code(R"({"grid": {"kmin": 0.1}})"), ErrorCode::ConfigParse);
    EXPECT_EQ(parse_code(R"({"decompose": {"vertices": [{"k": [0,0,0,0], "nu": 1}]}})"), ErrorCode::ConfigParse);
    EXPECT_EQ(parse_code(R"({"tolerances": {"not_a_check": 1.0}})"), ErrorCode::ConfigParse);
}

TEST(Config, TypeAndRangeErrors) {
    EXPECT_EQ(parse_code("{"), ErrorCode::ConfigParse);
    EXPECT_EQ(parse_code("[]"), ErrorCode::ConfigParse);
    EXPECT_EQ(parse_code(R"({"seed": -1})"), ErrorCode::ConfigParse);
    EXPECT_EQ(parse_code(R"({"seed": 1.5})"), ErrorCode::ConfigParse);
    EXPECT_EQ(parse_code(R"({"loop": [[0,0,0]]})"), ErrorCode::ConfigParse);
    EXPECT_EQ(parse_code(R"({"grid": {"k_min": 2.0}})"), ErrorCode::ConfigParse);
    EXPECT_EQ(parse_code(R"({"action": {"eta_factors": [0.1]}})"), ErrorCode::ConfigParse);
    EXPECT_EQ(parse_code(R"({"decompose": {"vertices": [{"mu": 4}]}})"), ErrorCode::ConfigParse);
    EXPECT_EQ(parse_code(R"({"action": {"include_self": 1}})"), ErrorCode::ConfigParse);
}

TEST(Config, ErrorNamesPath) {
    try {
        (void)parse_config(R"({"grid": {"n_radial": 4, "extra": 1}})");
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("$.grid.extra"), std::string::npos);
    }
}

TEST(Config, EchoRoundTrips) {
    const auto c = parse_config(R"({"seed": 7, "charge": 0.5, "tolerances": {"ward_identity": 1e-9},
        "grid": {"k_min": 0.01, "k_max": 2, "n_radial": 4, "n_angular": 3}})");
    const auto echo = config_echo(c);
    const auto again = parse_config(echo.dump());
    EXPECT_EQ(config_echo(again).dump(), echo.dump());
    EXPECT_EQ(again.tolerances.at("ward_identity"), 1e-9);
}

TEST(Report, Fnv1aKnownValues) {
    EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
    EXPECT_EQ(hex64(0xaf63dc4c8601ec8cULL), "af63dc4c8601ec8c");
}

TEST(Report, DerivedSeedsDiffer) {
    std::set<std::uint64_t> seeds;
    for (const auto& n : check_names()) seeds.insert(derive_seed(42, n));
    EXPECT_EQ(seeds.size(), check_names().size());
    EXPECT_NE(derive_seed(42, "ward_identity"), derive_seed(43, "ward_identity"));
}

TEST(Report, CsvCells) {
    EXPECT_EQ(csv_number(0.1), "0.10000000000000001");
    EXPECT_EQ(csv_number(-0.0), "0");
    EXPECT_EQ(csv_number(1e-300), "1e-300");
    EXPECT_EQ(csv_number(2.0 / 3.0), "0.66666666666666663");
    EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(csv_field("say \"x\""), "\"say \"\"x\"\"\"");
    EXPECT_EQ(csv_row({"a", "b"}), "a,b\r\n");
}

TEST(Registry, NamesUniqueAndTolerancesNonNegative) {
    std::set<std::string> names;
    for (const auto& d : check_registry()) {
        EXPECT_TRUE(names.insert(d.name).second) << d.name;
        EXPECT_GE(d.default_tolerance, 0.0);
        EXPECT_FALSE(d.tag.empty());
    }
}

TEST(Registry, UnreachableToleranceFails) {
    SuiteConfig c;
    c.tolerances["ward_identity"] = 1e-30;
    const auto r = run_check(c, "ward_identity");
    EXPECT_FALSE(r.pass);
    EXPECT_GT(r.residual, 1e-30);
    EXPECT_THROW((void)run_check(c, "no_such_check"), Error);
}

TEST(Registry, SameSeedSameResidual) {
    SuiteConfig c;
    const auto a = run_check(c, "gauge_condition");
    const auto b = run_check(c, "gauge_condition");
    EXPECT_EQ(a.residual, b.residual);
    EXPECT_EQ(a.inputs_digest, b.inputs_digest);
    c.seed = 43;
    EXPECT_NE(run_check(c, "gauge_condition").inputs_digest, a.inputs_digest);
}

TEST(Commands, CurrentRowsAndGauge) {
    SuiteConfig c;
    c.grid = {1e-2, 1.0, 5, 1};
    const auto out = run_current(c);
    std::istringstream in(out.text);
    std::string line;
    int rows = -1;
    while (std::getline(in, line)) {
        ++rows;
        if (rows == 0) continue;
        const auto cut = line.rfind(',');
        EXPECT_LT(std::stod(line.substr(cut + 1)), 1e-12);
    }
    EXPECT_EQ(rows, 10);
}

TEST(Commands, EmptyGridIsHeaderOnly) {
    SuiteConfig c;
    c.grid.n_radial = 0;
    const auto out = run_current(c);
    EXPECT_EQ(std::count(out.text.begin(), out.text.end(), '\n'), 1);
}

TEST(Commands, InvalidLoop) {
    SuiteConfig c;
    c.loop.resize(2);
    try {
        (void)run_current(c);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidLoop);
    }
}

TEST(Commands, CoherentNormFactorAndMonotone) {
    SuiteConfig c;
    const auto out = run_coherent(c);
    std::istringstream in(out.text);
    std::string line;
    std::getline(in, line);
    double prev_n = -1.0;
    int rows = 0;
    while (std::getline(in, line)) {
        std::istringstream cells(line);
        std::string a, b, d;
        std::getline(cells, a, ',');
        std::getline(cells, b, ',');
        std::getline(cells, d, ',');
        const double n = std::stod(b);
        EXPECT_EQ(std::stod(d), std::exp(-0.5 * n));
        // ladder is descending in k_min
        EXPECT_GT(n, prev_n);
        prev_n = n;
        ++rows;
    }
    EXPECT_EQ(rows, 4);
}

TEST(Commands, ChargeOnlyEntersPhase) {
    SuiteConfig c;
    SuiteConfig neutral;
    neutral.charge = 0.0;
    const auto a = run_coherent(c).text;
    const auto b = run_coherent(neutral).text;
    // same photon numbers, phase column zero
    auto column = [](const std::string& text, int col) {
        std::vector<std::string> out;
        std::istringstream in(text);
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) {
            std::istringstream cells(line);
            std::string cell;
            for (int i = 0; i <= col; ++i) std::getline(cells, cell, ',');
            if (!cell.empty() && cell.back() == '\r') cell.pop_back();
            out.push_back(cell);
        }
        return out;
    };
    EXPECT_EQ(column(a, 1), column(b, 1));
    for (const auto& cell : column(b, 3)) EXPECT_EQ(cell, "0");
}

TEST(Commands, DecomposeDegenerateNamesIndices) {
    SuiteConfig c;
    c.decompose.vertices = {{FourVector{}, 1}};
    try {
        (void)run_decompose(c);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::DegeneratePoles);
        EXPECT_NE(std::string(e.what()).find("0 and 1"), std::string::npos);
    }
}

TEST(Commands, ActionWithSelfPairsRefused) {
    SuiteConfig c;
    c.action.include_self = true;
    const auto out = run_action(c);
    EXPECT_FALSE(out.ok);
    const auto j = nlohmann::json::parse(out.text);
    EXPECT_FALSE(j["converged"].get<bool>());
    for (const auto& s : j["self_pairs"]) EXPECT_TRUE(s["divergent"].get<bool>());
}
