#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <string>
#include <sys/wait.h>

using nlohmann::json;

namespace {

struct Run
{
    int status = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "")
{
    const std::string cmd = env + " " CORANK_CLI_PATH " " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p)
        return r;
    char buf[4096];
    std::size_t k;
    while ((k = fread(buf, 1, sizeof buf, p)) > 0)
        r.out.append(buf, k);
    const int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

} // namespace

TEST(Cli, Degree)
{
    const auto r = run("degree --space complex-sym --n 3 --mu 2");
    ASSERT_EQ(r.status, 0);
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["degree"], 4);
    EXPECT_EQ(j["provenance"], "closed-form");
}

TEST(Cli, Volume)
{
    const auto r = run("volume --space real --n 2 --mu 1");
    ASSERT_EQ(r.status, 0);
    const auto j = json::parse(r.out);
    EXPECT_NEAR(j["ratio"]["value"].get<double>(), 1.5708, 1e-4);
    EXPECT_NEAR(j["ratio"]["value_ln"].get<double>(), std::log(std::acos(-1.0) / 2), 1e-12);
    EXPECT_EQ(j["ratio"]["provenance"], "closed-form");
    EXPECT_TRUE(j["ratio"]["stderr"].is_null());
}

TEST(Cli, VolumeWithEstimatedMoment)
{
    const auto r = run("volume --space sym --n 4 --mu 2 --samples 20000 --seed 3");
    ASSERT_EQ(r.status, 0);
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["ratio"]["provenance"], "monte-carlo");
    EXPECT_GT(j["ratio"]["stderr"].get<double>(), 0.0);
    EXPECT_EQ(j["inputs"]["det_moment"]["samples"], 20000);
}

TEST(Cli, ConstantsExactBranch)
{
    const auto r = run("constants --which I1 --mu 1 --samples 1000 --seed 7");
    ASSERT_EQ(r.status, 0);
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["mean"].get<double>(), 1.0);
    EXPECT_EQ(j["stderr"].get<double>(), 0.0);
    EXPECT_EQ(j["provenance"], "closed-form");
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(run("degree --space complex --n 3 --mu 2 --bogus").status, 2);
    EXPECT_EQ(run("").status, 2);
    EXPECT_EQ(run("degree --space real --n 3 --mu 2").status, 2);
    EXPECT_EQ(run("volume --space real --n 2 --mu 3").status, 2);
    EXPECT_EQ(run("surface-singularities --n 4").status, 2);
}

TEST(Cli, TooFewSamplesIsUsageError)
{
    const auto r = run("volume --space sym --n 4 --mu 2 --samples 1 --seed 1");
    EXPECT_EQ(r.status, 2);
}

TEST(Cli, WorkerEnvironment)
{
    EXPECT_EQ(run("degree --space complex --n 3 --mu 2", "CORANK_WORKERS=0").status, 0);
    const auto bad = run("constants --which I1 --mu 2 --samples 1000", "CORANK_WORKERS=abc");
    EXPECT_EQ(bad.status, 2);
}

TEST(Cli, ByteIdenticalAcrossRunsAndWorkers)
{
    const std::string args = "constants --which I1 --mu 2 --samples 50000 --seed 11";
    const auto a = run(args, "CORANK_WORKERS=1");
    const auto b = run(args, "CORANK_WORKERS=1");
    const auto c = run(args, "CORANK_WORKERS=4");
    ASSERT_EQ(a.status, 0);
    EXPECT_EQ(a.out, b.out);
    auto ja = json::parse(a.out), jc = json::parse(c.out);
    ja.erase("workers");
    jc.erase("workers");
    EXPECT_EQ(ja.dump(), jc.dump());
}

TEST(Cli, SurfaceSingularities)
{
    const auto r = run("surface-singularities --n 3");
    ASSERT_EQ(r.status, 0);
    const auto j = json::parse(r.out);
    EXPECT_NEAR(j["expected_real"]["value"].get<double>(), 2.0, 1e-12);
    EXPECT_NEAR(j["published_expression"]["value"].get<double>(), 1.0, 1e-12);
    EXPECT_EQ(j["complex_count"], 4);
}

TEST(Cli, ValidateCsv)
{
    const auto r = run("validate --suite selberg --samples 20000 --format csv");
    EXPECT_EQ(r.out.rfind("suite,check,", 0), 0u);
}

TEST(Cli, Asymptotics)
{
    const auto r = run("asymptotics --space complex --mu 2 --n-min 50 --n-max 500");
    ASSERT_EQ(r.status, 0);
    const auto j = json::parse(r.out);
    EXPECT_NEAR(j["exponent"].get<double>(), 4.0, 0.05);
    EXPECT_TRUE(j["pass"].get<bool>());
}
