#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "wksusy/cli/scenario.hpp"

namespace {

using namespace wksusy;
using namespace wksusy::cli;

enum Exit { kPass = 0, kFail = 1, kUsage = 2 };

json load_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw UsageError("config: cannot read '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw UsageError("config: " + std::string(e.what()));
    }
}

int execute(ScenarioConfig cfg, const std::string& format_flag, const std::string& out_flag) {
    if (!format_flag.empty()) cfg.format = parse_format(format_flag);
    if (!out_flag.empty()) cfg.out_path = out_flag;
    const RunReport report = run_scenario(cfg);
    const std::string bytes = emit_report(report, cfg.format);
    if (cfg.out_path.empty())
        std::cout << bytes;
    else
        write_output(cfg.out_path, bytes);
    if (!report.pass()) std::fprintf(stderr, "%s: %s\n", report.scenario.c_str(), "one or more checks failed");
    return report.pass() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fractional supersymmetry checks on truncated graded Fock spaces"};
    app.require_subcommand(1);

    std::string config_path, format, out;
    auto* run = app.add_subcommand("run", "Run a scenario from a JSON config");
    run->add_option("--config", config_path, "Scenario config file")->required();
    run->add_option("--format", format, "json, csv or text");
    run->add_option("--out", out, "Write the report here instead of stdout");

    std::string model = "oscillator", scenario = "verify-wk";
    int k = 3, d = 40;
    double c = 0.0, a = 0.0, b = 1.0;
    auto* verify = app.add_subcommand("verify", "Shorthand for a model scenario");
    verify->add_option("--model", model, "Model family");
    verify->add_option("--k", k, "Grading order");
    verify->add_option("--d", d, "Truncation depth");
    verify->add_option("--c", c, "C_lambda coupling (c_lambda_symmetric)");
    verify->add_option("--a", a, "Slope (linear)");
    verify->add_option("--b", b, "Offset (linear)");
    verify->add_option("--scenario", scenario, "verify-wk, verify-susy, spectrum, subsystems or realization-crosscheck");
    verify->add_option("--format", format, "json, csv or text");
    verify->add_option("--out", out, "Write the report here instead of stdout");

    double L = 8.0;
    int points = 2001;
    auto* fd = app.add_subcommand("fd", "Finite-difference super-oscillator spectrum");
    fd->add_option("--domain", L, "Half-width L of [-L, L]");
    fd->add_option("--points", points, "Grid points");
    fd->add_option("--format", format, "json, csv or text");
    fd->add_option("--out", out, "Write the report here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kPass : kUsage;
    }

    try {
        json cfg;
        if (*run) {
            cfg = load_json(config_path);
        } else if (*verify) {
            json m{{"model", model}, {"k", k}, {"d", d}};
            if (model == "c_lambda_symmetric") m["c"] = c;
            if (model == "linear") {
                m["a"] = a;
                m["b"] = b;
            }
            cfg = {{"scenario", scenario}, {"model", m}};
        } else {
            cfg = {{"scenario", "fd-spectrum"}, {"domain", L}, {"points", points}};
        }
        return execute(parse_config(cfg), format, out);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kUsage;
    } catch (const ConfigurationError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return kUsage;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kFail;
    }
}
