#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "wksusy/cli/report_io.hpp"
#include "wksusy/coherent_states.hpp"
#include "wksusy/diffreal.hpp"
#include "wksusy/fd_spectrum.hpp"
#include "wksusy/kfermion_quon.hpp"
#include "wksusy/susy_engine.hpp"
#include "wksusy/uqsl2.hpp"
#include "wksusy/wk_algebra.hpp"

namespace wksusy::cli {

/// A module error raised while running a scenario, tagged with its name.
class ScenarioError : public Error {
public:
    ScenarioError(const std::string& scenario, const std::string& what)
        : Error(scenario + ": " + what), scenario_(scenario) {}
    const std::string& scenario() const noexcept { return scenario_; }

private:
    std::string scenario_;
};

inline const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names{"verify-wk",  "verify-susy", "spectrum", "subsystems",
                                                "realization-crosscheck", "uqsl2", "quon-limit", "grassmann",
                                                "diffreal",   "fd-spectrum", "coherent"};
    return names;
}

inline constexpr int kMinK = 2, kMaxK = 8, kMinD = 4, kMaxD = 200;

struct ModelConfig {
    std::string family;
    int k = 0;
    int d = 0;
    json params = json::object();
};

struct ScenarioConfig {
    std::string scenario;
    std::optional<ModelConfig> model;
    ToleranceConfig tol;
    bool tol_given = false;
    Format format = Format::json;
    std::string out_path;
    json raw = json::object();
};

namespace detail {

inline const json& require(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object() || !obj.contains(key)) throw UsageError(path + key + ": required field missing");
    return obj.at(key);
}

inline int get_int(const json& obj, const std::string& key, const std::string& path, std::optional<int> def = {}) {
    if (!obj.contains(key)) {
        if (def) return *def;
        throw UsageError(path + key + ": required field missing");
    }
    const json& v = obj.at(key);
    if (!v.is_number_integer()) throw UsageError(path + key + ": expected an integer");
    return v.get<int>();
}

inline double get_double(const json& obj, const std::string& key, const std::string& path, std::optional<double> def = {}) {
    if (!obj.contains(key)) {
        if (def) return *def;
        throw UsageError(path + key + ": required field missing");
    }
    const json& v = obj.at(key);
    if (!v.is_number()) throw UsageError(path + key + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw UsageError(path + key + ": must be finite");
    return x;
}

inline std::string get_string(const json& obj, const std::string& key, const std::string& path,
                              std::optional<std::string> def = {}) {
    if (!obj.contains(key)) {
        if (def) return *def;
        throw UsageError(path + key + ": required field missing");
    }
    const json& v = obj.at(key);
    if (!v.is_string()) throw UsageError(path + key + ": expected a string");
    return v.get<std::string>();
}

inline std::vector<double> get_doubles(const json& obj, const std::string& key, const std::string& path,
                                       std::optional<std::vector<double>> def = {}) {
    if (!obj.contains(key)) {
        if (def) return *def;
        throw UsageError(path + key + ": required field missing");
    }
    const json& v = obj.at(key);
    if (!v.is_array()) throw UsageError(path + key + ": expected an array of numbers");
    std::vector<double> out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) throw UsageError(path + key + "[" + std::to_string(i) + "]: expected a number");
        out.push_back(v[i].get<double>());
    }
    return out;
}

inline void check_range(int v, int lo, int hi, const std::string& field) {
    if (v < lo || v > hi)
        throw UsageError(field + ": " + std::to_string(v) + " outside " + std::to_string(lo) + ".." + std::to_string(hi));
}

inline int parse_k(const json& obj, const std::string& path, std::optional<int> def = {}) {
    const int k = get_int(obj, "k", path, def);
    if (k < kMinK) throw UsageError(path + "k: grading order " + std::to_string(k) + " is below 2");
    check_range(k, kMinK, kMaxK, path + "k");
    return k;
}

}  // namespace detail

inline ModelConfig parse_model(const json& m) {
    using namespace detail;
    if (!m.is_object()) throw UsageError("model: expected an object");
    ModelConfig mc;
    mc.family = get_string(m, "model", "model.");
    mc.k = parse_k(m, "model.");
    mc.d = get_int(m, "d", "model.");
    check_range(mc.d, kMinD, kMaxD, "model.d");
    mc.params = m;
    static const std::vector<std::string> families{"oscillator", "per_sector", "c_lambda", "c_lambda_symmetric",
                                                   "linear",     "uq_sl2",     "custom"};
    if (std::find(families.begin(), families.end(), mc.family) == families.end())
        throw UsageError("model.model: unknown family '" + mc.family + "'");
    return mc;
}

inline StructureSpec build_spec(const ModelConfig& mc) {
    using namespace detail;
    const json& m = mc.params;
    const std::string p = "model.";
    auto sized = [&](const std::string& key) {
        auto v = get_doubles(m, key, p);
        if (static_cast<int>(v.size()) != mc.k)
            throw UsageError(p + key + ": expected " + std::to_string(mc.k) + " entries, got " + std::to_string(v.size()));
        return v;
    };
    if (mc.family == "oscillator") return StructureSpec::oscillator(mc.k);
    if (mc.family == "per_sector") return StructureSpec::per_sector(sized("f"));
    if (mc.family == "c_lambda") return StructureSpec::c_lambda(sized("c"));
    if (mc.family == "c_lambda_symmetric") return StructureSpec::c_lambda_symmetric(mc.k, get_double(m, "c", p));
    if (mc.family == "linear") return StructureSpec::linear(mc.k, get_double(m, "a", p), get_double(m, "b", p));
    if (mc.family == "uq_sl2") return StructureSpec::uq_sl2(mc.k);
    // custom
    const json& t = require(m, "table", p);
    if (!t.is_array()) throw UsageError(p + "table: expected an array of rows");
    std::vector<std::vector<double>> rows;
    for (size_t s = 0; s < t.size(); ++s) {
        if (!t[s].is_array()) throw UsageError(p + "table[" + std::to_string(s) + "]: expected an array");
        std::vector<double> row;
        for (size_t i = 0; i < t[s].size(); ++i) {
            if (!t[s][i].is_number())
                throw UsageError(p + "table[" + std::to_string(s) + "][" + std::to_string(i) + "]: expected a number");
            row.push_back(t[s][i].get<double>());
        }
        rows.push_back(std::move(row));
    }
    return StructureSpec::custom(mc.k, get_int(m, "n_min", p, 0), std::move(rows));
}

/// Applies WK_SUSY_TOL when set; a malformed value is a usage error.
inline void apply_env_tolerance(ToleranceConfig& tol, bool& given) {
    const char* env = std::getenv("WK_SUSY_TOL");
    if (!env || !*env) return;
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v))
        throw UsageError(std::string("WK_SUSY_TOL: expected a positive number, got '") + env + "'");
    tol.rel_tol = v;
    given = true;
}

inline ScenarioConfig parse_config(const json& j) {
    using namespace detail;
    if (!j.is_object()) throw UsageError("config: expected a JSON object");
    ScenarioConfig c;
    c.raw = j;
    c.scenario = get_string(j, "scenario", "");
    const auto& names = scenario_names();
    if (std::find(names.begin(), names.end(), c.scenario) == names.end())
        throw UsageError("scenario: unknown scenario '" + c.scenario + "'");

    static const std::vector<std::string> model_scenarios{"verify-wk", "verify-susy", "spectrum", "subsystems",
                                                          "realization-crosscheck"};
    const bool needs_model =
        std::find(model_scenarios.begin(), model_scenarios.end(), c.scenario) != model_scenarios.end();
    if (needs_model) c.model = parse_model(require(j, "model", ""));
    else if (j.contains("model")) c.model = parse_model(j.at("model"));

    if (j.contains("tolerances")) {
        const json& t = j.at("tolerances");
        if (!t.is_object()) throw UsageError("tolerances: expected an object");
        c.tol.rel_tol = get_double(t, "rel_tol", "tolerances.", c.tol.rel_tol);
        c.tol.abs_floor = get_double(t, "abs_floor", "tolerances.", c.tol.abs_floor);
        c.tol_given = true;
    }
    apply_env_tolerance(c.tol, c.tol_given);
    try {
        c.tol.validate();
    } catch (const ConfigurationError& e) {
        throw UsageError(std::string("tolerances: ") + e.what());
    }

    if (j.contains("output")) {
        const json& o = j.at("output");
        if (!o.is_object()) throw UsageError("output: expected an object");
        c.format = parse_format(get_string(o, "format", "output.", std::string("json")));
        c.out_path = get_string(o, "path", "output.", std::string());
    }
    return c;
}

namespace detail {

inline int model_depth(const ModelConfig& mc, const StructureSpec& spec) {
    if (mc.params.contains("admissible") && mc.params.at("admissible").is_boolean() && mc.params.at("admissible").get<bool>() &&
        spec.unitary_required())
        return std::max(admissible_depth(spec, mc.d), kMinD);
    return mc.d;
}

inline json model_echo(const StructureSpec& spec, const GradedBasis& b) {
    return {{"family", spec.model_name()}, {"label", describe(spec)}, {"k", b.k()}, {"d", b.d()}, {"dim", b.dim()}};
}

inline void run_model_scenario(const ScenarioConfig& c, RunReport& r) {
    const auto spec = build_spec(*c.model);
    const GradedBasis basis(spec.k(), model_depth(*c.model, spec));
    r.results["model"] = model_echo(spec, basis);
    const auto g = build_generators(spec, basis);
    r.results["hermitian"] = g.hermitian;

    if (c.scenario == "verify-wk") {
        r.add("", verify_wk_relations(g, c.tol));
        return;
    }
    if (c.scenario == "verify-susy") {
        r.add("", build_doublet(g, c.tol).axiom_report);
        return;
    }
    if (c.scenario == "spectrum") {
        const auto hb = build_hamiltonian_general(g, c.tol);
        r.add("H (general assembly) = sum_s H_s Pi_s", hb.cross_check.residual, hb.cross_check.pass);
        const int k = spec.k();
        const int discard = get_int(c.raw, "discard_top", "", 2 * k);
        const auto pat = degeneracy_pattern(hb.H, discard);
        json energies = json::array(), mult = json::array();
        for (const auto& l : pat.levels) {
            energies.push_back(l.energy);
            mult.push_back(l.multiplicity);
            r.table.rows.push_back({l.energy, l.multiplicity});
        }
        r.table.columns = {"energy", "multiplicity"};
        r.results["energies"] = energies;
        r.results["multiplicities"] = mult;
        r.results["truncation_cutoff"] = pat.truncation_cutoff;
        if (c.raw.contains("expected_multiplicities")) {
            const auto want = get_doubles(c.raw, "expected_multiplicities", "");
            bool ok = want.size() <= pat.levels.size();
            for (size_t i = 0; ok && i < want.size(); ++i) ok = static_cast<int>(want[i]) == pat.levels[i].multiplicity;
            r.add("multiplicities match expected prefix", 0.0, ok);
        }
        if (c.raw.contains("expected_energies")) {
            const auto want = get_doubles(c.raw, "expected_energies", "");
            double worst = want.size() <= pat.levels.size() ? 0.0 : INFINITY;
            for (size_t i = 0; i < want.size() && i < pat.levels.size(); ++i)
                worst = std::max(worst, std::abs(want[i] - pat.levels[i].energy));
            r.add("energies match expected prefix", worst, worst <= 1e-12);
        }
        return;
    }
    if (c.scenario == "subsystems") {
        const auto D = build_doublet(g, c.tol);
        const auto T = sector_table(g);
        const auto F = factorize_subsystems(D, T, g, c.tol);
        for (const auto& sub : F.subsystems) r.add("s=" + std::to_string(sub.s) + ": ", sub.report);
        r.add("", F.report);
        json ground = json::object();
        for (int s = 2; s <= spec.k(); ++s) ground[std::to_string(s)] = T(s, 0);
        r.results["ground_energies"] = ground;
        return;
    }
    // realization-crosscheck
    const auto R = build_realized_generators(spec, basis, c.tol);
    r.add("realization: ", R.report);
    const auto hb = build_hamiltonian_general(g, c.tol);
    const double scale = std::max(1.0, hb.H.matrix().cwiseAbs().maxCoeff());
    const double gap = max_abs_diff(hb.H_assembled.matrix(), hb.H.matrix()) / scale;
    r.add("general assembly = sector table (entrywise)", gap, gap <= c.tol.rel_tol);
    auto special = [&](Specialization which, const char* name) {
        const double e = max_abs_diff(specialize_hamiltonian(g, which).matrix(), hb.H_assembled.matrix()) / scale;
        r.add(std::string(name) + " form = general assembly (entrywise)", e, e <= c.tol.rel_tol);
    };
    if (spec.is_unit()) special(Specialization::oscillator, "oscillator");
    if (spec.s_independent()) special(Specialization::nonlinear_g, "constant-G");
    if (std::holds_alternative<UqSl2>(spec.variant())) special(Specialization::uq_sl2, "quantum-group");
}

inline RepType parse_rep_type(const std::string& s) {
    if (s == "nilpotent") return RepType::nilpotent;
    if (s == "cyclic") return RepType::cyclic;
    if (s == "semiperiodic") return RepType::semiperiodic;
    throw UsageError("rep_type: expected nilpotent, cyclic, semiperiodic or all, got '" + s + "'");
}

inline int top_level_k(const ScenarioConfig& c) {
    if (c.raw.contains("k")) return parse_k(c.raw, "");
    if (c.model) return c.model->k;
    throw UsageError("k: required field missing");
}

inline ToleranceConfig tight_default(const ScenarioConfig& c) {
    if (c.tol_given) return c.tol;
    return {1e-12, c.tol.abs_floor};
}

}  // namespace detail

inline RunReport run_scenario(const ScenarioConfig& c) {
    using namespace detail;
    const auto t0 = std::chrono::steady_clock::now();
    RunReport r;
    r.scenario = c.scenario;
    r.config = c.raw;
    r.config["resolved_tolerances"] = {{"rel_tol", c.tol.rel_tol}, {"abs_floor", c.tol.abs_floor}};

    try {
        if (c.model && (c.scenario == "verify-wk" || c.scenario == "verify-susy" || c.scenario == "spectrum" ||
                        c.scenario == "subsystems" || c.scenario == "realization-crosscheck")) {
            run_model_scenario(c, r);
        } else if (c.scenario == "uqsl2") {
            const int k = top_level_k(c);
            const std::string which = get_string(c.raw, "rep_type", "", std::string("all"));
            std::vector<RepType> types;
            if (which == "all") types = {RepType::nilpotent, RepType::cyclic, RepType::semiperiodic};
            else types = {parse_rep_type(which)};
            for (auto t : types) {
                const auto rep = build_uqsl2_rep(k, t);
                r.add(std::string(to_string(t)) + ": ", verify_uqsl2_embedding(rep, c.tol));
                r.results[to_string(t)] = {{"j0", rep.j0}};
            }
        } else if (c.scenario == "quon-limit") {
            const int k = top_level_k(c);
            const int depth = get_int(c.raw, "depth", "", 24);
            check_range(depth, kMinD, kMaxD, "depth");
            const auto eps = get_doubles(c.raw, "epsilons", "", std::vector<double>{1e-1, 1e-2, 1e-3});
            const auto q = quon_limit_study(k, depth, eps);
            json pts = json::array();
            for (const auto& p : q.points) {
                pts.push_back({{"epsilon", p.epsilon}, {"residual", p.residual}});
                r.table.rows.push_back({p.epsilon, p.residual});
            }
            r.table.columns = {"epsilon", "residual"};
            r.results["points"] = pts;
            r.results["orders"] = q.orders;
            r.add("r(eps) strictly decreasing", q.points.back().residual, q.strictly_decreasing);
        } else if (c.scenario == "grassmann") {
            r.add("", verify_grassmann_relations(top_level_k(c), tight_default(c)));
        } else if (c.scenario == "diffreal") {
            const int k = top_level_k(c);
            const double cc = get_double(c.raw, "c", "", 0.0);
            const int M = get_int(c.raw, "M", "", 12);
            check_range(M, 4, kMaxD, "M");
            const std::string v = get_string(c.raw, "variant", "", std::string("first"));
            std::vector<DiffVariant> vs;
            if (v == "first" || v == "both") vs.push_back(DiffVariant::first);
            if (v == "canonical" || v == "both") vs.push_back(DiffVariant::canonical);
            if (vs.empty()) throw UsageError("variant: expected first, canonical or both, got '" + v + "'");
            for (auto var : vs)
                r.add(std::string(to_string(var)) + ": ", build_differential_realization(k, cc, M, var, c.tol).report);
            if (k == 2) r.add("k=2 supercharges: ", verify_two_grade_supercharges(cc, M, c.tol));
        } else if (c.scenario == "fd-spectrum") {
            const double L = get_double(c.raw, "domain", "", 8.0);
            const int N = get_int(c.raw, "points", "", 2001);
            const double acc = get_double(c.raw, "accuracy", "", 1e-3);
            FdGrid grid = FdGrid::symmetric(L, N);
            if (c.raw.contains("lower")) grid.lower = get_double(c.raw, "lower", "");
            try {
                grid.validate();
            } catch (const ConfigurationError& e) {
                throw UsageError(std::string("fd grid: ") + e.what());
            }
            const std::vector<double> exact{0.0, 1.0, 1.0, 2.0, 2.0};
            const auto cv = fd_convergence_study(grid, exact);
            for (size_t i = 0; i < cv.coarse.size(); ++i) r.table.rows.push_back({static_cast<int>(i), cv.coarse[i], exact[i]});
            r.table.columns = {"level", "energy", "exact"};
            r.results["eigenvalues"] = cv.coarse;
            r.results["refined_eigenvalues"] = cv.fine;
            r.results["convergence_ratio"] = cv.ratio;
            r.add("lowest five = {0,1,1,2,2}", cv.coarse_error, cv.coarse_error <= acc);
            r.add("grid-halving error ratio in [3.5, 4.5]", std::abs(cv.ratio - 4.0), cv.ratio >= 3.5 && cv.ratio <= 4.5);
        } else if (c.scenario == "coherent") {
            const int k = top_level_k(c);
            const auto zv = get_doubles(c.raw, "z", "", std::vector<double>{1.0, 0.0});
            if (zv.size() != 2) throw UsageError("z: expected [re, im]");
            const cplx z(zv[0], zv[1]);
            const auto ts = get_doubles(c.raw, "t", "", std::vector<double>{0.37});
            const int depth = get_int(c.raw, "depth", "", 24);
            check_range(depth, 8, kMaxD, "depth");
            const int margin = get_int(c.raw, "margin", "", 4);
            check_range(margin, 0, depth - 1, "margin");
            const auto st = construct_supercoherent(z, k, depth);
            const auto low = lowering_eigen_check(st, margin, c.tol);
            r.add("f- b- |z,theta) = z theta |z,theta)", low.overall.residual, low.overall.pass);
            const auto g = build_generators(StructureSpec::oscillator(k), GradedBasis(k, depth));
            const auto T = sector_table(g);
            json evo = json::array();
            for (double t : ts) {
                const auto e = evolution_check(st, T, t, c.tol);
                char tag[48];
                std::snprintf(tag, sizeof tag, "t=%.6g ", t);
                for (const auto& s : e.sectors)
                    r.add(std::string(tag) + "sector " + std::to_string(s.s) + " phase law", s.residual, s.pass);
                r.add(std::string(tag) + "moduli preserved", e.modulus_drift, e.modulus_drift <= c.tol.rel_tol);
                if (k == 2) r.add(std::string(tag) + "full-state identity", e.full_state.residual, e.full_state.pass);
                json lit = json::array();
                for (const auto& s : e.sectors) lit.push_back(s.literal_residual);
                evo.push_back({{"t", t},
                               {"literal_reading_residuals", lit},
                               {"s0_literal_mismatch", {e.literal_mismatch.real(), e.literal_mismatch.imag()}},
                               {"s0_mismatch_vs_exp_ikk1t", e.literal_mismatch_error}});
            }
            r.results["evolution"] = evo;
        } else {
            throw UsageError("scenario '" + c.scenario + "' needs a model");
        }
    } catch (const UsageError&) {
        throw;
    } catch (const ConfigurationError&) {
        throw;
    } catch (const Error& e) {
        throw ScenarioError(c.scenario, e.what());
    }
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace wksusy::cli
