#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "localsearch/analytic/model.hpp"

#ifndef LOCALSEARCH_CLI
#error "LOCALSEARCH_CLI must point at the built executable"
#endif

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
};

Result cli(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + "'" LOCALSEARCH_CLI "' " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, {}};
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("localsearch_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST(CliPlan, DefaultTableSubset) {
    const auto r = cli("plan --n 16,24");
    ASSERT_EQ(r.code, 0);
    const auto rows = csv(r.out);
    ASSERT_EQ(rows.size(), 9u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"n", "algo", "m", "k_total", "diff"}));
    EXPECT_EQ(rows[1], (std::vector<std::string>{"16", "grover", "", "183", ""}));
    EXPECT_EQ(rows[2], (std::vector<std::string>{"16", "efficient", "8", "188", "5"}));
    EXPECT_EQ(rows[3], (std::vector<std::string>{"16", "efficient", "6", "195", "12"}));
    EXPECT_EQ(rows[4], (std::vector<std::string>{"16", "efficient", "4", "NA", "NA"}));
    EXPECT_EQ(rows[6], (std::vector<std::string>{"24", "efficient", "12", "2931", "4"}));
}

TEST(CliPlan, ZeroThresholdAndExplicitM) {
    const auto rows = csv(cli("plan --n 4 --threshold 0").out);
    ASSERT_GE(rows.size(), 3u);
    EXPECT_EQ(rows[1][3], "0");
    EXPECT_EQ(rows[2][3], "0");
    const auto na = csv(cli("plan --n 16 --m 4").out);
    ASSERT_EQ(na.size(), 3u);
    EXPECT_EQ(na[2][3], "NA");
}

TEST(CliPlan, JsonAndRanges) {
    const auto r = cli("plan --n 16..18:2 --m 6 --format json");
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(r.out);
    ASSERT_EQ(j.size(), 4u);
    EXPECT_EQ(j[1]["k_total"], 195);
    EXPECT_EQ(j[2]["n"], 18);
}

TEST(CliExitCodes, UsageInputAndCap) {
    EXPECT_EQ(cli("plan --n 9..3").code, 2);
    EXPECT_EQ(cli("plan --n abc").code, 2);
    EXPECT_EQ(cli("frobnicate").code, 2);
    EXPECT_EQ(cli("").code, 2);
    EXPECT_EQ(cli("plan --threshold 2").code, 2);
    EXPECT_EQ(cli("simulate --n 4 --target 1100 --shots 0").code, 2);
    EXPECT_EQ(cli("simulate --n 4").code, 2);
    EXPECT_EQ(cli("simulate --n 4 --target 11").code, 3);
    EXPECT_EQ(cli("simulate --n 4 --target 11x0").code, 3);
    EXPECT_EQ(cli("plan --n 8 --m 8").code, 3);
    EXPECT_EQ(cli("route --circuit /nonexistent/c.json").code, 3);
    EXPECT_EQ(cli("route --n 4 --target 1100 --coupling line:3").code, 3);
    EXPECT_EQ(cli("simulate --n 26 --target 00000000000000000000000000").code, 4);
    EXPECT_EQ(cli("simulate --n 12 --target 000000000000 --shots 5", "LOCALSEARCH_MAX_QUBITS=10").code, 4);
    EXPECT_EQ(cli("--help").code, 0);
}

TEST(CliSimulate, EfficientFourQubitReport) {
    const auto r = cli("simulate --algo efficient --n 4 --m 2 --tail extra --target 1100 --shots 8192 --seed 3 --format json");
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(r.out);
    EXPECT_NEAR(j["success_probability"].get<double>(), 0.766, 0.005);
    EXPECT_NEAR(j["observed_success"].get<double>(), 0.766, 0.02);
    EXPECT_EQ(j["oracle_calls"], 3);
    EXPECT_EQ(j["model_cnots"], 33);
    EXPECT_TRUE(j.contains("ist"));
    EXPECT_TRUE(j.contains("depth"));
    EXPECT_TRUE(j.contains("cnots"));
    std::uint64_t total = 0;
    for (const auto& [k, v] : j["counts"].items()) total += v.get<std::uint64_t>();
    EXPECT_EQ(total, 8192u);
}

TEST(CliSimulate, DeterministicArtifacts) {
    const auto hist = scratch("h.csv"), rep = scratch("r.json");
    const std::string args = "simulate --algo grover --n 4 --k 3 --target 0110 --shots 500 --seed 9 --noise-p2 0.01 --out '" +
                             hist.string() + "' --report '" + rep.string() + "'";
    ASSERT_EQ(cli(args).code, 0);
    std::ifstream h1(hist), r1(rep);
    std::stringstream a, b;
    a << h1.rdbuf();
    b << r1.rdbuf();
    ASSERT_EQ(cli(args).code, 0);
    std::ifstream h2(hist), r2(rep);
    std::stringstream c, d;
    c << h2.rdbuf();
    d << r2.rdbuf();
    EXPECT_EQ(a.str(), c.str());
    EXPECT_EQ(b.str(), d.str());
    EXPECT_EQ(a.str().rfind("#shots=500\nbitstring,count\n", 0), 0u);
    const auto rj = json::parse(b.str());
    EXPECT_TRUE(rj.contains("ist"));
    EXPECT_EQ(rj["noise"]["p2"], 0.01);
}

TEST(CliSimulate, SpecFile) {
    const auto spec = scratch("spec.json");
    std::ofstream(spec) << R"({"variant":"partial","n":4,"target":"1100","preset":"paper-4q"})";
    const auto r = cli("simulate --spec '" + spec.string() + "' --shots 10 --format json");
    ASSERT_EQ(r.code, 0);
    EXPECT_NEAR(json::parse(r.out)["success_probability"].get<double>(), 0.77, 0.005);
}

TEST(CliSweep, SinglePointEqualsModel) {
    const auto r = cli("sweep --n 10 --m 5 --calls 30");
    ASSERT_EQ(r.code, 0);
    const auto rows = csv(r.out);
    ASSERT_EQ(rows.size(), 32u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"n", "m", "k1", "k2", "k_total", "probability"}));
    const auto trace = localsearch::analytic::call_trace(10, 5, 1, 1, 30);
    for (std::size_t i = 0; i < trace.size(); ++i) EXPECT_NEAR(std::stod(rows[i + 1][5]), trace[i], 1e-11);
    const auto steps = localsearch::analytic::evolve(10, 5, 1, 1, 15);
    EXPECT_NEAR(std::stod(rows[31][5]), steps[15], 1e-11);
}

TEST(CliSweep, FourDesignsPeakOrdering) {
    const auto r = cli("sweep --n 10 --m 5,3,2 --k1 1,3 --k2 1,3 --calls 200 --format json");
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(r.out);
    std::map<std::string, double> peak;
    for (const auto& d : j) {
        if (d["k1"] != d["k2"]) continue;
        double best = 0;
        for (double p : d["probability"]) best = std::max(best, p);
        peak[std::to_string(d["m"].get<int>()) + "/" + std::to_string(d["k1"].get<int>())] = best;
    }
    EXPECT_GT(peak["5/1"], peak["2/1"]);
    EXPECT_GT(peak["5/1"], peak["3/1"]);
    EXPECT_GT(peak["5/1"], peak["5/3"]);
}

TEST(CliCost, TableShape) {
    const auto r = cli("cost --n 6..10");
    ASSERT_EQ(r.code, 0);
    const auto rows = csv(r.out);
    ASSERT_EQ(rows.size(), 16u);
    EXPECT_EQ(rows[0][0], "algo");
    EXPECT_EQ(rows[1][0], "grover");
    EXPECT_EQ(rows[1][4], "504");
    EXPECT_NEAR(std::stod(rows[1][5]), 0.816, 0.001);
    EXPECT_NEAR(std::stod(rows[1][6]), 617, 1);
    for (std::size_t i = 1; i < rows.size(); i += 3) {
        const double g = std::stod(rows[i][6]), p = std::stod(rows[i + 1][6]), e = std::stod(rows[i + 2][6]);
        EXPECT_LT(e, p) << rows[i][1];
        EXPECT_LT(p, g) << rows[i][1];
    }
}

TEST(CliCost, ZeroOracleDepth) {
    const auto rows = csv(cli("cost --algo grover --n 6 --oracle-depth 0").out);
    ASSERT_EQ(rows.size(), 2u);
    const int j = std::stoi(rows[1][3]);
    EXPECT_EQ(std::stoi(rows[1][4]), j * (14 * 6 - 21));
}

TEST(CliRoute, FullTopologyHasNoInflation) {
    const auto rows = csv(cli("route --algo grover --n 4 --k 3 --target 1100 --coupling full:5").out);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[1][2], rows[1][3]);
    EXPECT_EQ(rows[1][4], rows[1][5]);
    EXPECT_EQ(rows[1][6], "0");
    EXPECT_EQ(rows[1][7], "true");
}

TEST(CliRoute, LineAndCasablanca) {
    const auto line = csv(cli("route --algo grover --n 4 --k 3 --target 1100 --coupling line:5").out);
    ASSERT_EQ(line.size(), 2u);
    EXPECT_GT(std::stoll(line[1][3]), std::stoll(line[1][2]));
    EXPECT_EQ(line[1][7], "true");

    auto mapped = [](const std::string& extra) {
        const auto rows = csv(cli("route --n 4 --target 1100 --coupling casablanca " + extra).out);
        return std::stoll(rows.at(1).at(3));
    };
    const auto g = mapped("--algo grover --k 3");
    const auto p = mapped("--algo partial --preset paper-4q");
    const auto e = mapped("--algo efficient --m 2 --tail extra");
    EXPECT_LT(e, p);
    EXPECT_LT(p, g);
}

TEST(CliRoute, CircuitAndCouplingFiles) {
    const auto circ = scratch("c.json"), coup = scratch("m.json"), routed = scratch("routed.json");
    ASSERT_EQ(cli("circuit --algo efficient --n 4 --m 2 --tail extra --target 1100 --form lowered --out '" + circ.string() + "'").code, 0);
    std::ofstream(coup) << R"({"qubits": 5, "edges": [[0,1],[1,2],[2,3],[3,4]]})";
    const auto r = cli("route --circuit '" + circ.string() + "' --coupling '" + coup.string() + "' --layout degree --routed '" +
                       routed.string() + "' --format json");
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["verified"], "true");
    EXPECT_GE(j["cnots_mapped"].get<int>(), j["cnots"].get<int>());
    std::ifstream f(routed);
    const auto rj = json::parse(f);
    EXPECT_EQ(rj["circuit"]["width"], 5);
    EXPECT_EQ(rj["final_layout"].size(), rj["initial_layout"].size());

    std::ofstream(coup) << R"({"qubits": 4, "edges": [[0,1],[2,3]]})";
    EXPECT_EQ(cli("route --circuit '" + circ.string() + "' --coupling '" + coup.string() + "'").code, 3);
}

TEST(CliCircuit, OpaqueJson) {
    const auto r = cli("circuit --algo grover --n 3 --k 2 --target 101");
    ASSERT_EQ(r.code, 0);
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["width"], 3);
    int oracles = 0;
    for (const auto& g : j["gates"]) oracles += g["kind"] == "PhaseOracle" ? 1 : 0;
    EXPECT_EQ(oracles, 2);
}
