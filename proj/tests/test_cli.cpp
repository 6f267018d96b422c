#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "wksusy/cli/scenario.hpp"

using namespace wksusy;
using namespace wksusy::cli;

namespace {

namespace fs = std::filesystem;

struct ScratchDir {
    fs::path path;
    ScratchDir() {
        path = fs::temp_directory_path() / ("wksusy_cli_" + std::to_string(::getpid()) + "_" +
                                            ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::create_directories(path);
    }
    ~ScratchDir() { fs::remove_all(path); }
    fs::path write(const std::string& name, const std::string& body) const {
        std::ofstream(path / name) << body;
        return path / name;
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int run_tool(const std::string& args, const fs::path& out = {}) {
    std::string cmd = std::string(WK_SUSY_BIN) + " " + args;
    cmd += out.empty() ? " > /dev/null 2>&1" : " > '" + out.string() + "' 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string sample(const std::string& name) { return std::string(WK_SUSY_SAMPLES) + "/" + name; }

ScenarioConfig config_from(const std::string& text) { return parse_config(json::parse(text)); }

}  // namespace

TEST(CanonicalJson, KeysSortedAndDoublesRoundTrip) {
    const json j = json::parse(R"({"b": 0.1, "a": [1, 2.5, true], "c": {"z": null, "y": "s"}})");
    EXPECT_EQ(canonical_dump(j), R"({"a":[1,2.5,true],"b":0.10000000000000001,"c":{"y":"s","z":null}})");
    EXPECT_EQ(json::parse(canonical_dump(j)).at("b").get<double>(), 0.1);
}

TEST(CanonicalJson, NonFiniteBecomesNull) {
    json j;
    j["x"] = std::numeric_limits<double>::infinity();
    EXPECT_EQ(canonical_dump(j), R"({"x":null})");
}

TEST(Report, DigestIgnoresWallTime) {
    RunReport a;
    a.scenario = "verify-wk";
    a.add("r", 1e-15, true);
    RunReport b = a;
    b.wall_time = 12.0;
    EXPECT_EQ(report_digest(a), report_digest(b));
    b.add("s", 0.5, false);
    EXPECT_NE(report_digest(a), report_digest(b));
    EXPECT_EQ(report_digest(a).size(), 16u);
}

TEST(Report, EmptyReportPasses) {
    RunReport r;
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(report_json(r).at("pass"), true);
}

TEST(Report, CsvUsesTableWhenPresent) {
    RunReport r;
    r.table = {{"energy", "multiplicity"}, {{-1.0, 1}, {1.0, 2}}};
    const std::string csv = emit_report(r, Format::csv);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "energy,multiplicity");
    EXPECT_NE(csv.find("-1,1"), std::string::npos);
    RunReport plain;
    plain.add("a,b", 0.0, true);
    EXPECT_EQ(emit_report(plain, Format::csv), "name,residual,pass\n\"a,b\",0,true\n");
}

TEST(Report, TextEndsWithVerdict) {
    RunReport r;
    r.scenario = "grassmann";
    r.add("x", 0.0, false);
    const std::string t = emit_report(r, Format::text);
    EXPECT_NE(t.find("overall: FAIL"), std::string::npos);
}

TEST(ConfigParsing, FormatNamesAreClosed) {
    EXPECT_EQ(parse_format("csv"), Format::csv);
    EXPECT_THROW(parse_format("xml"), UsageError);
}

TEST(ConfigParsing, BoundsOnGradingAndDepth) {
    EXPECT_THROW(config_from(R"({"scenario":"verify-wk","model":{"model":"oscillator","k":1,"d":10}})"), UsageError);
    EXPECT_THROW(config_from(R"({"scenario":"verify-wk","model":{"model":"oscillator","k":9,"d":10}})"), UsageError);
    EXPECT_THROW(config_from(R"({"scenario":"verify-wk","model":{"model":"oscillator","k":3,"d":3}})"), UsageError);
    EXPECT_THROW(config_from(R"({"scenario":"verify-wk","model":{"model":"oscillator","k":3,"d":201}})"), UsageError);
    EXPECT_NO_THROW(config_from(R"({"scenario":"verify-wk","model":{"model":"oscillator","k":8,"d":200}})"));
}

TEST(ConfigParsing, ErrorsNameTheField) {
    try {
        config_from(R"({"scenario":"verify-wk","model":{"model":"oscillator","k":"three","d":10}})");
        FAIL();
    } catch (const UsageError& e) {
        EXPECT_NE(std::string(e.what()).find("model.k"), std::string::npos) << e.what();
    }
    EXPECT_THROW(config_from(R"({"scenario":"nope"})"), UsageError);
    EXPECT_THROW(config_from(R"({"scenario":"spectrum"})"), UsageError);
    EXPECT_THROW(config_from(R"([1,2])"), UsageError);
}

TEST(ConfigParsing, EnvironmentOverridesTolerance) {
    ::setenv("WK_SUSY_TOL", "1e-6", 1);
    const auto c = config_from(R"({"scenario":"grassmann","k":3,"tolerances":{"rel_tol":1e-12}})");
    EXPECT_EQ(c.tol.rel_tol, 1e-6);
    ::setenv("WK_SUSY_TOL", "abc", 1);
    EXPECT_THROW(config_from(R"({"scenario":"grassmann","k":3})"), UsageError);
    ::unsetenv("WK_SUSY_TOL");
    EXPECT_EQ(config_from(R"({"scenario":"grassmann","k":3})").tol.rel_tol, ToleranceConfig{}.rel_tol);
}

TEST(Scenarios, SpectrumTableForThreeGrades) {
    const auto r = run_scenario(config_from(R"({"scenario":"spectrum","model":{"model":"oscillator","k":3,"d":30}})"));
    EXPECT_TRUE(r.pass());
    ASSERT_GE(r.table.rows.size(), 3u);
    EXPECT_EQ(r.table.columns, (std::vector<std::string>{"energy", "multiplicity"}));
    EXPECT_EQ(r.table.rows[0][0].get<double>(), -1.0);
    EXPECT_EQ(r.table.rows[2][1].get<int>(), 3);
}

TEST(Scenarios, ReportsAreDeterministic) {
    const auto c = config_from(R"({"scenario":"verify-susy","model":{"model":"c_lambda_symmetric","k":3,"d":20,"c":0.5}})");
    EXPECT_EQ(report_digest(run_scenario(c)), report_digest(run_scenario(c)));
}

TEST(Scenarios, ModuleErrorsAreTagged) {
    const auto c = config_from(R"({"scenario":"uqsl2","k":2})");
    EXPECT_THROW(run_scenario(c), ScenarioError);
}

TEST(Binary, SampleConfigsPass) {
    for (const char* name : {"verify_wk_oscillator.json", "verify_susy_clambda.json", "spectrum_k3.json", "subsystems_k4.json",
                             "realization_linear.json", "uqsl2_k5.json", "quon_limit_k3.json", "grassmann_k4.json",
                             "diffreal_k3.json", "fd_spectrum.json", "coherent_k3.json"})
        EXPECT_EQ(run_tool("run --config " + sample(name)), 0) << name;
}

TEST(Binary, UsageErrorsExitTwo) {
    ScratchDir dir;
    EXPECT_EQ(run_tool(""), 2);
    EXPECT_EQ(run_tool("run"), 2);
    EXPECT_EQ(run_tool("run --config " + (dir.path / "missing.json").string()), 2);
    EXPECT_EQ(run_tool("run --config " + dir.write("bad.json", "{not json").string()), 2);
    EXPECT_EQ(run_tool("verify --model oscillator --k 1 --d 40"), 2);
    EXPECT_EQ(run_tool("verify --model oscillator --k 3 --d 201"), 2);
    EXPECT_EQ(run_tool("run --config " + sample("spectrum_k3.json") + " --format yaml"), 2);
}

TEST(Binary, FailingChecksExitOne) {
    ScratchDir dir;
    EXPECT_EQ(run_tool("run --config " + dir.write("uq2.json", R"({"scenario":"uqsl2","k":2})").string()), 1);
    EXPECT_EQ(run_tool("run --config " +
                       dir.write("canon.json", R"({"scenario":"diffreal","k":2,"c":0.4,"variant":"canonical"})").string()),
              1);
}

TEST(Binary, VerifyShorthandAndOutputFile) {
    ScratchDir dir;
    EXPECT_EQ(run_tool("verify --model oscillator --k 3 --d 40 --out " + (dir.path / "r.json").string()), 0);
    const json j = json::parse(slurp(dir.path / "r.json"));
    EXPECT_EQ(j.at("pass"), true);
    EXPECT_EQ(j.at("scenario"), "verify-wk");
    EXPECT_EQ(j.at("digest").get<std::string>().size(), 16u);
}

TEST(Binary, CsvSpectrumHeader) {
    ScratchDir dir;
    const fs::path out = dir.path / "spec.csv";
    ASSERT_EQ(run_tool("run --config " + sample("spectrum_k3.json"), out), 0);
    const std::string csv = slurp(out);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "energy,multiplicity");
}

TEST(Binary, TighterEnvironmentToleranceCanFail) {
    const std::string cfg = sample("verify_susy_clambda.json");
    EXPECT_EQ(run_tool("run --config " + cfg), 0);
    ::setenv("WK_SUSY_TOL", "1e-30", 1);
    EXPECT_EQ(run_tool("run --config " + cfg), 1);
    ::setenv("WK_SUSY_TOL", "-1", 1);
    EXPECT_EQ(run_tool("run --config " + cfg), 2);
    ::unsetenv("WK_SUSY_TOL");
}
