#include "cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = polyreg::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string last_line(const std::string& s) {
    std::string t = s;
    while (!t.empty() && t.back() == '\n') t.pop_back();
    return t.substr(t.rfind('\n') + 1);
}

const std::vector<std::vector<std::string>> kCommands{
    {"psi", "--n", "48"},
    {"psi", "--n", "48", "--p", "5"},
    {"eta", "--n", "48", "--s", "8"},
    {"table1"},
    {"ineq"},
    {"ineq", "--clause", "1", "--t", "16"},
    {"ineq", "--sweep", "--t-max", "25"},
    {"watson", "--lattice", "1,5,5", "--p", "5"},
    {"watson", "--lattice", "1,5,5", "--p", "5", "--conductor", "6"},
    {"localrep", "--lattice", "1,1,1", "--n", "7", "--p", "2"},
    {"stabilize", "--conductor", "6", "--coeffs", "1,25,25"},
    {"stabilize", "--m", "5", "--coeffs", "1,25,25"},
    {"regcheck", "scan", "--m", "3", "--coeffs", "1,1,3", "--bound", "300"},
    {"regcheck", "candidates", "--m", "3", "--coeff-bound", "3", "--bound", "300", "--jobs", "2"},
    {"theorem"},
    {"theorem", "--case", "2"},
    {"examples", "--eureka-bound", "500"},
};

}  // namespace

TEST(Cli, EtaPrintsValue) {
    const auto r = run({"eta", "--n", "48", "--s", "8"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(last_line(r.out), "13");
}

TEST(Cli, TheoremCaseFourEndsWithBound) {
    const auto r = run({"theorem", "--case", "4"});
    EXPECT_EQ(r.code, 0);
    const std::string tail = last_line(r.out);
    EXPECT_EQ(tail.substr(tail.size() - std::string("m ≤ 712").size()), "m ≤ 712");
}

TEST(Cli, IneqExactValues) {
    const auto r = run({"ineq", "--clause", "1", "--t", "16", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["result"]["lhs"], "12091972151626183");
    EXPECT_EQ(j["result"]["rhs"], "3770775127457792");
    EXPECT_EQ(j["result"]["holds"], true);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"eta", "--n", "48"}).code, 2);
    EXPECT_EQ(run({"eta", "--n", "48", "--s", "8", "--bogus"}).code, 2);
    EXPECT_EQ(run({"table1", "--format", "yaml"}).code, 2);
    EXPECT_EQ(run({"localrep", "--lattice", "1,1,1", "--n", "7", "--p", "4"}).code, 2);
    EXPECT_EQ(run({"--version"}).code, 0);
}

TEST(Cli, VerifyAgainstShippedGoldens) {
    for (const std::vector<std::string>& c :
         {std::vector<std::string>{"table1"}, {"psi", "--n", "48"}, {"ineq"}, {"theorem"}, {"theorem", "--case", "3"}}) {
        auto args = c;
        args.push_back("--verify");
        const auto r = run(args);
        EXPECT_EQ(r.code, 0) << c[0] << ": " << r.err;
    }
}

TEST(Cli, VerifyMismatchGivesDiff) {
    const auto dir = std::filesystem::temp_directory_path() / "polyreg_cli_golden";
    std::filesystem::create_directories(dir);
    for (const auto& e : std::filesystem::directory_iterator(POLYREG_GOLDEN_DIR))
        std::filesystem::copy_file(e.path(), dir / e.path().filename(), std::filesystem::copy_options::overwrite_existing);
    auto j = nlohmann::json::parse(std::ifstream(dir / "table1.json"));
    j["rows"][8]["eta"] = 12;
    std::ofstream(dir / "table1.json") << j.dump(2) << "\n";
    const auto r = run({"table1", "--verify", "--golden-dir", dir.string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("rows[8].eta"), std::string::npos) << r.err;
    EXPECT_EQ(run({"table1", "--verify", "--golden-dir", (dir / "missing").string()}).code, 1);
    std::filesystem::remove_all(dir);
}

TEST(Cli, JsonRoundTripsByteIdentical) {
    for (auto c : kCommands) {
        c.insert(c.end(), {"--format", "json"});
        const auto r = run(c);
        ASSERT_EQ(r.code, 0) << c[0] << ": " << r.err;
        const auto j = nlohmann::json::parse(r.out);
        EXPECT_EQ(j.dump(2) + "\n", r.out) << c[0];
        EXPECT_EQ(j["version"], polyreg::cli::version);
    }
}

TEST(Cli, VersionInEveryFormat) {
    const std::string tag = std::string("polyreg ") + polyreg::cli::version;
    for (auto c : kCommands)
        for (const char* fmt : {"text", "csv"}) {
            auto args = c;
            args.insert(args.end(), {"--format", fmt});
            const auto r = run(args);
            ASSERT_EQ(r.code, 0) << c[0] << " " << fmt << ": " << r.err;
            EXPECT_EQ(r.out.rfind("# " + tag, 0), 0u) << c[0] << " " << fmt;
        }
}

TEST(Cli, CsvTable) {
    const auto r = run({"table1", "--format", "csv"});
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    EXPECT_EQ(line, "eta,n,s");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    EXPECT_EQ(rows, 16);
}

TEST(Cli, ScanWritesReport) {
    const auto path = std::filesystem::temp_directory_path() / "polyreg_report.json";
    const auto r = run({"regcheck", "scan", "--m", "3", "--coeffs", "1,1,7", "--bound", "200", "--out", path.string()});
    ASSERT_EQ(r.code, 0);
    const auto j = nlohmann::json::parse(std::ifstream(path));
    EXPECT_EQ(j["result"]["verdict"], "not-regular(5)");
    std::filesystem::remove(path);
}

TEST(Cli, StabilizeFromMGonalFormIsFlagged) {
    const auto r = run({"stabilize", "--m", "5", "--coeffs", "1,25,25", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(nlohmann::json::parse(r.out)["result"].contains("warning"));
    const auto s = run({"stabilize", "--conductor", "6", "--coeffs", "1,25,25", "--format", "json"});
    EXPECT_FALSE(nlohmann::json::parse(s.out)["result"].contains("warning"));
}
