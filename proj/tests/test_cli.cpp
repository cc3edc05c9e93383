#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args)
{
    args.insert(args.begin(), "wigner");
    std::vector<const char*> argv;
    for (const std::string& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = wigner::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args)
{
    args.push_back("--format");
    args.push_back("json");
    const Outcome o = run(args);
    EXPECT_EQ(o.code, 0) << o.err;
    return nlohmann::json::parse(o.out);
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ','))
            cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

} // namespace

TEST(Cli, AsymptoticThreeParticles)
{
    const nlohmann::json j = run_json({"asymptotic", "--n", "3", "--d", "1"});
    EXPECT_NEAR(j["sites"][0]["lambda0"].get<double>(), 0.324905, 1e-6);
    EXPECT_NEAR(j["sites"][1]["lambda0"].get<double>(), 0.319336, 1e-6);
    EXPECT_EQ(j["config"]["n"], 3);
    EXPECT_EQ(j["beta"].size(), 3u);
    EXPECT_EQ(j["omega_sq"].size(), 3u);
    const Outcome text = run({"asymptotic", "--n", "3"});
    EXPECT_NE(text.out.find("0.324905"), std::string::npos);
    EXPECT_NE(text.out.find("0.319336"), std::string::npos);
}

TEST(Cli, AsymptoticTwoParticlesEntropy)
{
    const nlohmann::json j = run_json({"asymptotic", "--n", "2", "--d", "1"});
    EXPECT_NEAR(j["entropy"]["s_total_bits"].get<double>(), 1.136180, 1e-6);
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(run({"asymptotic", "--n", "1", "--d", "1"}).code, 2);
    EXPECT_EQ(run({"asymptotic", "--n", "3", "--d", "0"}).code, 2);
    EXPECT_EQ(run({"asymptotic", "--n", "x"}).code, 2);
    EXPECT_EQ(run({"bogus"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"sweep", "--n-max", "21"}).code, 2);
    EXPECT_EQ(run({"magic-g", "--n", "0"}).code, 2);
    EXPECT_EQ(run({"asymptotic", "--format", "xml"}).code, 2);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, SweepColumnsAndMonotonicity)
{
    const Outcome d1 = run({"sweep", "--d", "1", "--n-max", "6", "--format", "csv"});
    const Outcome d3 = run({"sweep", "--d", "3", "--n-max", "6", "--format", "csv"});
    ASSERT_EQ(d1.code, 0);
    const auto r1 = csv_rows(d1.out);
    const auto r3 = csv_rows(d3.out);
    ASSERT_EQ(r1.size(), 6u);
    EXPECT_EQ(r1[0], (std::vector<std::string>{"N", "S_total_bits", "L", "lambda0_sum"}));
    for (std::size_t i = 1; i < r1.size(); ++i) {
        EXPECT_EQ(std::stoi(r1[i][0]), static_cast<int>(i) + 1);
        if (i > 1)
            EXPECT_GT(std::stod(r1[i][1]), std::stod(r1[i - 1][1]));
        EXPECT_GT(std::stod(r3[i][1]), std::stod(r1[i][1]));
    }
    const auto single = csv_rows(run({"sweep", "--n-max", "2", "--format", "csv"}).out);
    ASSERT_EQ(single.size(), 2u);
    const nlohmann::json a = run_json({"asymptotic", "--n", "2"});
    EXPECT_NEAR(std::stod(single[1][1]), a["entropy"]["s_total_bits"].get<double>(), 1e-10);
}

TEST(Cli, MagicG)
{
    EXPECT_NEAR(run_json({"magic-g", "--n", "1"})["series"]["g"].get<double>(), 1.4142135, 1e-7);
    EXPECT_NEAR(run_json({"magic-g", "--n", "3"})["series"]["g"].get<double>(), 5.2316, 1e-4);
    EXPECT_NEAR(run_json({"magic-g", "--n", "10"})["series"]["g"].get<double>(), 26.640, 1e-3);
}

TEST(Cli, FiniteUnsupportedDimension)
{
    EXPECT_EQ(run({"finite", "--n", "3", "--d", "3", "--g", "1"}).code, 4);
}

TEST(Cli, FiniteMagicTwoParticles)
{
    const nlohmann::json j = run_json({"finite", "--n", "2", "--magic-n", "1"});
    EXPECT_NEAR(j["config"]["g"].get<double>(), std::sqrt(2.0), 1e-12);
    EXPECT_EQ(j["config"]["factor"], "magic-series");
    EXPECT_EQ(j["config"]["integrator"], "quadrature");
    EXPECT_NEAR(j["alpha"].get<double>(), 1.0, 1e-3);
    EXPECT_TRUE(j.contains("occupancies"));
}

TEST(Cli, FiniteThreeParticlesTableValue)
{
    const nlohmann::json j = run_json({"finite", "--n", "3", "--g", "2"});
    EXPECT_NEAR(j["linear_entropy"].get<double>(), 0.616, 0.005);
    EXPECT_EQ(j["config"]["dy"], 0.25);
    EXPECT_EQ(j["config"]["factor"], "rayleigh-ritz");
}

TEST(Cli, MonteCarloConfigEmbedsSeed)
{
    const nlohmann::json j = run_json(
        {"finite", "--n", "4", "--g", "2", "--alpha", "0.8", "--samples", "200000", "--seed", "77"});
    EXPECT_EQ(j["config"]["seed"], 77);
    EXPECT_EQ(j["config"]["samples"], 200000);
    EXPECT_EQ(j["config"]["integrator"], "monte-carlo");
    EXPECT_TRUE(j["config"].contains("thermalization"));
}

TEST(Cli, EquilibriumAndModes)
{
    const nlohmann::json e = run_json({"equilibrium", "--n", "2", "--g", "8"});
    EXPECT_NEAR(e["positions"][1].get<double>(), 1.259921, 1e-6);
    const nlohmann::json m = run_json({"modes", "--n", "2", "--d", "3"});
    EXPECT_NEAR(m["omega_sq"][1].get<double>(), 5.0, 1e-10);
    EXPECT_EQ(m["parity"][1], "antisymmetric");
}

TEST(Cli, CsvConfigHeaderAndOutFile)
{
    const std::filesystem::path path = std::filesystem::temp_directory_path() / "wigner_cli_test.csv";
    const Outcome o = run({"asymptotic", "--n", "4", "--format", "csv", "--out", path.string()});
    ASSERT_EQ(o.code, 0);
    EXPECT_TRUE(o.out.empty());
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    const std::string text = ss.str();
    EXPECT_NE(text.find("# n=4"), std::string::npos);
    EXPECT_NE(text.find("# d=1"), std::string::npos);
    EXPECT_EQ(csv_rows(text).size(), 5u);
    std::filesystem::remove(path);
}
