#include <zlbcli/commands.hpp>
#include <zlbcli/config.hpp>
#include <zlbcli/output.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

using namespace zlbcli;
using nlohmann::json;

namespace {

std::string csv(const ScanResult& r) {
    std::ostringstream os;
    write_csv(r, os);
    return os.str();
}

double num(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return *d;
    if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
    return std::numeric_limits<double>::quiet_NaN();
}

int column(const ScanResult& r, const std::string& name) {
    for (std::size_t k = 0; k < r.header.size(); ++k)
        if (r.header[k] == name) return static_cast<int>(k);
    ADD_FAILURE() << "no column " << name;
    return 0;
}

}  // namespace

TEST(Config, UnknownKeysAreRejectedWithTheirPath) {
    const json j = json::parse(R"({"command": "solve", "params": {"betta": 0.99}})");
    try {
        parse_config(j);
        FAIL() << "accepted unknown key";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("params.betta"), std::string::npos) << e.what();
    }
}

TEST(Config, InvalidParametersBecomeConfigErrors) {
    EXPECT_THROW(parse_config(json::parse(R"({"command": "solve", "params": {"beta": 1.5}})")), ConfigError);
    EXPECT_THROW(parse_config(json::parse(R"({"command": "nope"})")), ConfigError);
    EXPECT_THROW(parse_config(json::parse(
                     R"({"command": "region-scan", "grid": [{"variable": "eps1", "min": 0, "max": 1, "steps": 0}]})")),
                 ConfigError);
}

TEST(Config, GridValues) {
    GridAxis g{"p", 0.1, 0.5, 5};
    const auto v = g.values();
    ASSERT_EQ(v.size(), 5u);
    EXPECT_DOUBLE_EQ(v.front(), 0.1);
    EXPECT_DOUBLE_EQ(v.back(), 0.5);
    EXPECT_NEAR(v[2], 0.3, 1e-15);
    EXPECT_EQ((GridAxis{"p", 0.2, 0.2, 1}.values()), std::vector<double>{0.2});
}

TEST(Config, EchoRoundTrips) {
    const RunConfig c = parse_config(json::parse(R"({
        "command": "simulate",
        "params": {"lambda": 0.03, "M": 0.9},
        "shock": {"eps1": -0.02, "p": 0.8, "q": 0.95},
        "learning": {"kind": "rpe-mean", "horizon": 100},
        "seed": 17})"));
    const json echo = to_json(c);
    EXPECT_EQ(to_json(parse_config(echo)), echo);
    EXPECT_DOUBLE_EQ(echo["params"]["M"].get<double>(), 0.9);
    EXPECT_EQ(echo["seed"].get<std::uint64_t>(), 17u);
}

TEST(Config, GridVariablesMoveTheRightField) {
    zlb::ModelParams m;
    zlb::MarkovShock s;
    zlb::ContinuousShock cs;
    apply_grid_value("M_Mf", 0.8, m, s, cs);
    EXPECT_DOUBLE_EQ(m.M, 0.8);
    EXPECT_DOUBLE_EQ(m.Mf, 0.8);
    apply_grid_value("sigma_v", 0.2, m, s, cs);
    EXPECT_DOUBLE_EQ(cs.sigma_v, 0.2);
    EXPECT_FALSE(is_grid_variable("gamma"));
}

TEST(Output, NumberFormatting) {
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(-2.0), "-2");
    EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "+inf");
    EXPECT_EQ(format_number(-std::numeric_limits<double>::infinity()), "-inf");
    EXPECT_EQ(format_number(std::numeric_limits<double>::quiet_NaN()), "");
    const double v = 0.1 + 0.2;
    EXPECT_EQ(std::stod(format_number(v)), v);
}

TEST(Output, CsvRowsMustMatchHeader) {
    ScanResult r;
    r.header = {"a", "b"};
    r.add_row({1.5, std::string("x")});
    EXPECT_THROW(r.add_row({1.0}), std::exception);
    r.add_row({std::monostate{}, std::int64_t{3}});
    EXPECT_EQ(csv(r), "a,b\n1.5,x\n,3\n");
}

TEST(Commands, SolveReportsStableZpRpe) {
    RunConfig c;
    c.command = Command::solve;
    c.shock = {-0.04, 0.0, 0.85, 0.98};
    c.concepts = {zlb::Concept::REE, zlb::Concept::RPE};
    const ScanResult r = run(c, 1);
    const int con = column(r, "concept"), reg = column(r, "regime"), st = column(r, "estable");
    const int ok = column(r, "consistent");
    EXPECT_EQ(r.rows.size(), 8u);
    int rpe_rows = 0;
    for (const auto& row : r.rows) {
        if (num(row[ok]) != 1.0) continue;
        EXPECT_NE(std::get<std::string>(row[con]), "REE");
        if (std::get<std::string>(row[con]) == "RPE") {
            ++rpe_rows;
            EXPECT_EQ(num(row[st]) == 1.0, std::get<std::string>(row[reg]) == "ZP");
        }
    }
    EXPECT_EQ(rpe_rows, 2);
    EXPECT_EQ(r.meta["command"], "solve");
}

TEST(Commands, RegionScanAgreesWithStructuralCheck) {
    RunConfig c;
    c.command = Command::region_scan;
    c.shock = {0.0, 0.0, 0.5, 0.98};
    c.grid = {{"eps1", -0.1, 0.0, 21}, {"p", 0.05, 0.95, 19}};
    c.concepts = {zlb::Concept::REE, zlb::Concept::RPE};
    const ScanResult r = region_scan(c, 2);
    EXPECT_EQ(r.rows.size(), 21u * 19u);
    for (const char* k : {"REE", "RPE"})
        EXPECT_EQ(r.meta["agreement"][k]["agree"], r.meta["agreement"][k]["cells"]);
}

TEST(Commands, MaxPersistenceIsTheEdgeOfConsistency) {
    const zlb::ModelParams m;
    for (auto con : {zlb::Concept::REE, zlb::Concept::RPE})
        for (double e1 : {-0.1, -0.05, -0.02}) {
            const zlb::MarkovShock s{e1, 0.01, 0.5, 0.98};
            const double p = max_zp_persistence(con, m, s);
            ASSERT_FALSE(std::isnan(p));
            zlb::MarkovShock at = s, above = s;
            at.p = p;
            above.p = p + 2e-6;
            EXPECT_TRUE(zlb::solve_candidate(con, zlb::Regime::ZP, m, at).consistent);
            if (above.p < 1.0) EXPECT_FALSE(zlb::solve_candidate(con, zlb::Regime::ZP, m, above).consistent);
        }
}

TEST(Commands, DurationsFromPersistence) {
    RunConfig c;
    c.command = Command::duration_scan;
    c.shock = {0.0, 0.01, 0.5, 0.98};
    c.grid = {{"eps1", -0.1, -0.02, 5}};
    c.concepts = {zlb::Concept::REE, zlb::Concept::RPE};
    const ScanResult r = duration_scan(c, 2);
    const int rp = column(r, "REE_p_max"), rd = column(r, "REE_duration");
    const int pd = column(r, "RPE_duration");
    for (const auto& row : r.rows) {
        EXPECT_NEAR(num(row[rd]), 1.0 / (1.0 - num(row[rp])), 1e-9);
        if (!std::isnan(num(row[rd])) && !std::isnan(num(row[pd]))) EXPECT_GE(num(row[pd]), num(row[rd]));
    }
    EXPECT_NEAR(num(r.rows[0][rp]), 0.79458, 1e-5);
}

TEST(Commands, SimulationCsvIsReproducible) {
    RunConfig c;
    c.command = Command::simulate;
    c.shock = {-0.04, 0.0, 0.85, 0.98};
    c.learning.horizon = 3000;
    c.learning.stride = 7;
    c.seed = 11;
    const std::string a = csv(run(c, 1)), b = csv(run(c, 1));
    EXPECT_EQ(a, b);
    c.seed = 12;
    EXPECT_NE(csv(run(c, 1)), a);
}

TEST(Commands, ContinuousMetaCarriesFixedPoints) {
    RunConfig c;
    c.command = Command::continuous_rpe;
    c.grid = {{"a", -0.02, 0.005, 26}};
    const ScanResult r = run(c, 1);
    ASSERT_EQ(r.meta["fixed_points"].size(), 2u);
    EXPECT_NEAR(r.meta["a_star"].get<double>(), -0.00504338, 1e-7);
}

TEST(Commands, InfiniteHorizonCheckPasses) {
    RunConfig c;
    c.command = Command::ih_check;
    c.draws = 20;
    c.seed = 3;
    const ScanResult r = run(c, 2);
    EXPECT_EQ(r.rows.size(), 20u);
    EXPECT_TRUE(r.meta["all_ok"].get<bool>());
}
