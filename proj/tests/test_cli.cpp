#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "hyperdepth/cli.hpp"
#include "test_support.hpp"

namespace hd = hyperdepth;
using hd::cli::run;
using nlohmann::json;

namespace {

const std::string kTriangle = std::string(HYPERDEPTH_SAMPLES) + "/triangle.json";
const std::string kSeven = std::string(HYPERDEPTH_SAMPLES) + "/seven_lines.json";
const std::string kWeighted = std::string(HYPERDEPTH_SAMPLES) + "/weighted_six.json";

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = std::filesystem::temp_directory_path() /
               ("hyperdepth_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override { std::filesystem::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

    std::filesystem::path dir_;
};

json report(const hd::cli::RunResult& r) { return json::parse(r.out); }

}  // namespace

TEST(CliDigest, KnownVectors) {
    EXPECT_EQ(hd::cli::sha256Hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    EXPECT_EQ(hd::cli::sha256Hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(CliSeed, EnvironmentDefault) {
    EXPECT_EQ(hd::cli::defaultSeed(nullptr), 1u);
    EXPECT_EQ(hd::cli::defaultSeed("42"), 42u);
    EXPECT_THROW(hd::cli::defaultSeed("4x"), hd::InputError);
    auto r = run({"gen", "--d", "2", "--n", "3"}, "bad");
    EXPECT_EQ(r.exitCode, hd::cli::kExitInput);
}

TEST_F(CliTest, DepthOfTriangleCorner) {
    auto r = run({"depth", "--query", "0,0", kTriangle});
    ASSERT_EQ(r.exitCode, 0) << r.err;
    auto j = report(r);
    EXPECT_EQ(j["command"], "depth");
    EXPECT_EQ(j["status"], "ok");
    EXPECT_EQ(j["result"]["value"], "2");
    EXPECT_EQ(j["result"]["verified"], true);
    EXPECT_EQ(j["input"]["sha256"], hd::cli::sha256Hex(std::to_string(hd::readFile(kTriangle).size()) + ":" +
                                                       hd::readFile(kTriangle)));
    EXPECT_FALSE(j.contains("timing"));

    EXPECT_EQ(report(run({"depth", "--measure", "rd-open", "--query", "0,0", kTriangle}))["result"]["value"], "0");
    EXPECT_EQ(report(run({"depth", "--measure", "trd", "--query", "0,0", kTriangle}))["result"]["value"], "1");
    EXPECT_EQ(report(run({"htvd", "--query", "0,0", kTriangle}))["result"]["value"], "2");
    EXPECT_EQ(report(run({"depth", "--measure", "htvd", "--query", "0,0", kTriangle}))["result"]["value"], "2");
}

TEST_F(CliTest, RationalQueriesStayExact) {
    auto j = report(run({"depth", "--query", "1/3,1/3", kTriangle}));
    EXPECT_EQ(j["result"]["query"], json({"1/3", "1/3"}));
    EXPECT_EQ(j["result"]["value"], "1");
}

TEST_F(CliTest, ReportsAreDeterministicAcrossThreads) {
    auto a = run({"deepest", kSeven});
    auto b = run({"deepest", "--threads", "4", kSeven});
    ASSERT_EQ(a.exitCode, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    auto j = report(a);
    EXPECT_EQ(j["result"]["verified"], true);
    EXPECT_EQ(j["result"]["meets_bound"], true);
    EXPECT_GE(hd::parseRational(j["result"]["value"].get<std::string>()), 3);
}

TEST_F(CliTest, TimingIsOptIn) {
    auto j = report(run({"depth", "--timing", "--query", "0,0", kTriangle}));
    ASSERT_TRUE(j.contains("timing"));
    EXPECT_GE(j["timing"]["seconds"].get<double>(), 0.0);
}

TEST_F(CliTest, ReportToFile) {
    auto r = run({"depth", "--query", "0,0", "--out", path("r.json"), kTriangle});
    ASSERT_EQ(r.exitCode, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(json::parse(hd::readFile(path("r.json")))["result"]["value"], "2");
}

TEST_F(CliTest, UsageErrorsExitOne) {
    EXPECT_EQ(run({}).exitCode, 1);
    EXPECT_EQ(run({"nonsense"}).exitCode, 1);
    EXPECT_EQ(run({"depth", kTriangle}).exitCode, 1);
    EXPECT_EQ(run({"depth", "--measure", "bogus", "--query", "0,0", kTriangle}).exitCode, 1);
    EXPECT_EQ(run({"depth", "--query", "0,0", "--threads", "0", kTriangle}).exitCode, 1);
    auto help = run({"--help"});
    EXPECT_EQ(help.exitCode, 0);
    EXPECT_NE(help.out.find("depthmap"), std::string::npos);
}

TEST_F(CliTest, InputErrorsExitOne) {
    auto missing = run({"depth", "--query", "0,0", path("missing.json")});
    EXPECT_EQ(missing.exitCode, 1);
    EXPECT_EQ(report(missing)["status"], "input-error");
    EXPECT_FALSE(missing.err.empty());

    write("bad.json", "{\"d\": 2, \"hyperplanes\": [");
    EXPECT_EQ(run({"depth", "--query", "0,0", path("bad.json")}).exitCode, 1);
    EXPECT_EQ(run({"depth", "--query", "0,0,0", kTriangle}).exitCode, 1);
    EXPECT_EQ(run({"depth", "--query", "a,b", kTriangle}).exitCode, 1);
    write("zero.json", R"({"d": 2, "hyperplanes": [{"normal": ["0","0"], "offset": "1"}]})");
    EXPECT_EQ(run({"depth", "--query", "0,0", path("zero.json")}).exitCode, 1);
}

TEST_F(CliTest, PartitionMeasuresRejectWeights) {
    auto r = run({"htvd", "--query", "0,0", kWeighted});
    EXPECT_EQ(r.exitCode, 1);
    EXPECT_NE(r.err.find("unit weights"), std::string::npos);
    EXPECT_EQ(run({"hed", "--query", "0,0", kWeighted}).exitCode, 1);
    EXPECT_EQ(run({"depth", "--query", "0,0", kWeighted}).exitCode, 0);
}

TEST_F(CliTest, BudgetExhaustionExitsThree) {
    auto r = run({"htvd", "--query", "0,0", "--limit", "4", kSeven});
    EXPECT_EQ(r.exitCode, hd::cli::kExitBudget);
    auto j = report(r);
    EXPECT_EQ(j["status"], "budget-exceeded");
    EXPECT_TRUE(j.contains("lower_bound"));
    EXPECT_EQ(run({"hed", "--query", "0,0", "--limit", "4", kSeven}).exitCode, hd::cli::kExitBudget);
}

TEST_F(CliTest, EnclosureRoundTrip) {
    auto r = run({"hed", "--query", "1/4,1/4", "--out", path("hed.json"), kTriangle});
    ASSERT_EQ(r.exitCode, 0) << r.err;
    auto v = run({"hed-verify", "--cert", path("hed.json"), kTriangle});
    ASSERT_EQ(v.exitCode, 0) << v.err;
    EXPECT_EQ(report(v)["result"]["verified"], true);

    // Move the claimed center far away: the groups no longer enclose it.
    auto cert = json::parse(hd::readFile(path("hed.json")))["result"]["certificate"];
    cert["q"] = {"100", "100"};
    write("moved.json", cert.dump());
    auto bad = run({"hed-verify", "--cert", path("moved.json"), kTriangle});
    EXPECT_EQ(bad.exitCode, hd::cli::kExitVerification);
    EXPECT_EQ(report(bad)["status"], "verification-failed");

    write("junk.json", R"({"k": 1})");
    EXPECT_EQ(run({"hed-verify", "--cert", path("junk.json"), kTriangle}).exitCode, 1);
}

TEST_F(CliTest, TverbergPartition) {
    auto r = run({"tverberg", "--r", "3", kSeven});
    ASSERT_EQ(r.exitCode, 0) << r.err;
    auto j = report(r);
    EXPECT_EQ(j["result"]["verified"], true);
    EXPECT_EQ(j["result"]["parts"].size(), 3u);
    auto again = run({"tverberg", "--r", "3", kSeven});
    EXPECT_EQ(r.out, again.out);
    EXPECT_EQ(run({"tverberg", "--r", "2", kTriangle}).exitCode, 1);
}

TEST_F(CliTest, DepthMapWritesSvg) {
    auto r = run({"depthmap", "--out", path("m.svg"), "--marker", "--title", "a<b", kTriangle});
    ASSERT_EQ(r.exitCode, 0) << r.err;
    auto j = report(r);
    const std::string svg = hd::readFile(path("m.svg"));
    EXPECT_EQ(j["result"]["svg"]["sha256"], hd::cli::sha256Hex(svg));
    EXPECT_EQ(j["result"]["cells"], 7);
    EXPECT_EQ(j["result"]["max_depth"], "2");
    EXPECT_NE(svg.find("a&lt;b"), std::string::npos);
    EXPECT_NE(svg.find("class=\"marker\""), std::string::npos);
    EXPECT_EQ(j["result"]["regions"][0]["status"], "contractible");

    auto four = run({"depthmap", "--measure", "trd", "--threads", "3", "--out", path("t.svg"), kTriangle});
    ASSERT_EQ(four.exitCode, 0) << four.err;
    EXPECT_EQ(run({"depthmap", "--measure", "htvd", "--out", path("x.svg"), kTriangle}).exitCode, 1);
    EXPECT_EQ(run({"depthmap", "--out", path("x.svg"), std::string(HYPERDEPTH_SAMPLES) + "/space_seven.json"}).exitCode,
              1);
}

TEST_F(CliTest, GenIsSeeded) {
    auto a = run({"gen", "--d", "3", "--n", "5", "--seed", "9"});
    auto b = run({"gen", "--d", "3", "--n", "5"}, "9");
    ASSERT_EQ(a.exitCode, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    const auto arr = hd::parseArrangement(a.out);
    EXPECT_EQ(arr.size(), 5u);
    EXPECT_EQ(arr.dimension(), 3u);
    EXPECT_TRUE(hd::isGeneralPosition(arr));
    EXPECT_NE(a.out, run({"gen", "--d", "3", "--n", "5", "--seed", "10"}).out);

    auto w = run({"gen", "--d", "2", "--n", "4", "--profile", "weighted", "--out", path("w.json")});
    ASSERT_EQ(w.exitCode, 0) << w.err;
    EXPECT_EQ(report(w)["result"]["sha256"], hd::cli::sha256Hex(hd::readFile(path("w.json"))));
    EXPECT_FALSE(hd::loadArrangement(path("w.json")).unitWeights());
}

TEST_F(CliTest, TransversalOfGeneratedPair) {
    write("a.json", run({"gen", "--d", "2", "--n", "5", "--seed", "3"}).out);
    write("b.json", run({"gen", "--d", "2", "--n", "6", "--seed", "4"}).out);
    auto r = run({"transversal", path("a.json"), path("b.json")});
    ASSERT_EQ(r.exitCode, 0) << r.err;
    auto j = report(r);
    EXPECT_EQ(j["result"]["status"], "exact");
    EXPECT_EQ(j["result"]["verified"], true);
    EXPECT_EQ(j["input"]["files"].size(), 2u);
    EXPECT_EQ(run({"transversal", path("a.json"), std::string(HYPERDEPTH_SAMPLES) + "/space_seven.json"}).exitCode, 1);
}

TEST_F(CliTest, OracleAgreement) {
    auto r = run({"oracle", "--trials", "24", "--n", "6", "--threads", "2"});
    ASSERT_EQ(r.exitCode, 0) << r.err;
    auto j = report(r);
    EXPECT_EQ(j["result"]["agreements"], "24/24");
    EXPECT_EQ(r.out, run({"oracle", "--trials", "24", "--n", "6"}).out);
    EXPECT_EQ(report(run({"oracle", "--trials", "6", "--d", "3", "--n", "6"}))["result"]["agreements"], "6/6");
}

TEST_F(CliTest, AxiomsReportFailuresAsContent) {
    auto r = run({"axioms", "--query", "1/4,1/4", "--trials", "4", kTriangle});
    ASSERT_EQ(r.exitCode, 0) << r.err;
    EXPECT_EQ(report(r)["result"]["all_passed"], true);

    write("one.json", R"({"d": 2, "hyperplanes": [{"normal": ["1","-1"], "offset": "0"}]})");
    auto open = run({"axioms", "--measure", "rd-open", "--query", "2,2", "--trials", "4", path("one.json")});
    ASSERT_EQ(open.exitCode, 0) << open.err;
    auto j = report(open);
    EXPECT_EQ(j["result"]["all_passed"], false);
    bool sawIii = false;
    for (const auto& a : j["result"]["axioms"])
        if (a["axiom"] == "iii") {
            sawIii = true;
            EXPECT_EQ(a["passed"], false);
        }
    EXPECT_TRUE(sawIii);
}

TEST_F(CliTest, CrossCheckTriangleCorner) {
    auto r = run({"crosscheck", "--query", "0,0", kTriangle});
    ASSERT_EQ(r.exitCode, 0) << r.err;
    auto j = report(r);
    EXPECT_EQ(j["result"]["all_passed"], true);
    EXPECT_EQ(j["result"]["values"]["rd"], "2");
    EXPECT_EQ(j["result"]["values"]["rd_open"], "0");
    EXPECT_EQ(j["result"]["values"]["htvd"], "2");
}

TEST(CrossCheck, RandomInstancesSatisfyRelations) {
    hd::Rng rng(77);
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const auto a = hd::generateInstance(seed, 2, 6, "generic");
        const auto q = hd::testing::sampleQuery(a, rng, static_cast<int>(seed % 3));
        const auto c = hd::cli::crossCheck(a, q);
        for (const auto& k : c.checks) EXPECT_NE(k.outcome, "fail") << "seed " << seed << ": " << k.name << " " << k.detail;
        EXPECT_EQ(c.at("htvd = tvd").outcome, "pass");
    }
    const auto w = hd::generateInstance(5, 2, 5, "weighted");
    const auto c = hd::cli::crossCheck(w, hd::testing::V({"0", "0"}));
    EXPECT_EQ(c.at("rd = td").outcome, "not-applicable");
    EXPECT_EQ(c.at("rd >= trd").outcome, "pass");
    EXPECT_EQ(c.at("hed = ed").outcome, "not-applicable");
    EXPECT_THROW(c.at("nope"), hd::InputError);
}

TEST_F(CliTest, TriangleInteriorDepth) {
    auto j = report(run({"depth", "--measure", "rd", "--query", "1/4,1/4", kTriangle}));
    EXPECT_EQ(j["result"]["value"], "1");
}

TEST_F(CliTest, OracleTwoHundredTrials) {
    auto r = run({"oracle", "--trials", "200", "--seed", "5", "--d", "2", "--n", "10"});
    ASSERT_EQ(r.exitCode, 0) << r.err;
    EXPECT_EQ(report(r)["result"]["agreements"], "200/200");
}

TEST(CrossCheck, SevenLinesAtDeepestPoint) {
    const auto a = hd::loadArrangement(kSeven);
    const auto q = hd::deepestPoint(a).point;
    const auto c = hd::cli::crossCheck(a, q);
    EXPECT_TRUE(c.allPassed());
    const auto rd = hd::parseRational(c.values["rd"].get<std::string>());
    const auto htvd = hd::parseRational(c.values["htvd"].get<std::string>());
    EXPECT_GE(rd, 3);
    EXPECT_LE(htvd, rd);
    EXPECT_GE(htvd, hd::ceilRational(rd / 2));
}

TEST(CrossCheck, FarQueryHasDepthZeroEverywhere) {
    const auto a = hd::loadArrangement(kSeven);
    const auto c = hd::cli::crossCheck(a, hd::testing::V({"100000", "100000"}));
    EXPECT_TRUE(c.allPassed());
    for (const char* m : {"rd", "rd_open", "trd", "td", "htvd", "tvd", "hed", "ed"}) EXPECT_EQ(c.values[m], "0") << m;
}
