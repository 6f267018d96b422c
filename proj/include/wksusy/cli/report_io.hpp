#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "wksusy/errors.hpp"
#include "wksusy/report.hpp"

namespace wksusy::cli {

using json = nlohmann::json;

inline constexpr const char* kToolName = "wk-susy";
inline constexpr const char* kToolVersion = "1.0.0";

struct CheckRecord {
    std::string name;
    double residual = 0.0;
    bool pass = true;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;
    bool empty() const { return columns.empty(); }
};

struct RunReport {
    std::string scenario;
    json config = json::object();
    std::vector<CheckRecord> checks;
    json results = json::object();
    Table table;
    double wall_time = 0.0;

    bool pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    void add(const std::string& name, double residual, bool pass) { checks.push_back({name, residual, pass}); }
    void add(const std::string& prefix, const RelationReport& r) {
        for (const auto& c : r.checks()) checks.push_back({prefix + c.relation, c.residual, c.pass});
    }
};

enum class Format { json, csv, text };

inline Format parse_format(const std::string& s) {
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    if (s == "text") return Format::text;
    throw UsageError("output.format: expected json, csv or text, got '" + s + "'");
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Sorted keys (nlohmann objects are ordered maps), doubles at 17 significant
/// digits, non-finite numbers as null, no insignificant whitespace.
inline void write_canonical(const json& j, std::string& out) {
    switch (j.type()) {
        case json::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                out += json(it.key()).dump();
                out += ':';
                write_canonical(it.value(), out);
            }
            out += '}';
            break;
        }
        case json::value_t::array: {
            out += '[';
            for (size_t i = 0; i < j.size(); ++i) {
                if (i) out += ',';
                write_canonical(j[i], out);
            }
            out += ']';
            break;
        }
        case json::value_t::number_float: {
            const double v = j.get<double>();
            out += std::isfinite(v) ? format_double(v) : "null";
            break;
        }
        default:
            out += j.dump();
    }
}

inline std::string canonical_dump(const json& j) {
    std::string s;
    write_canonical(j, s);
    return s;
}

inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Report body without the wall time; the digest is taken over this.
inline json report_body(const RunReport& r) {
    json j;
    j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    j["scenario"] = r.scenario;
    j["config"] = r.config;
    j["checks"] = json::array();
    for (const auto& c : r.checks) j["checks"].push_back({{"name", c.name}, {"residual", c.residual}, {"pass", c.pass}});
    j["results"] = r.results;
    if (!r.table.empty()) {
        json rows = json::array();
        for (const auto& row : r.table.rows) rows.push_back(row);
        j["table"] = {{"columns", r.table.columns}, {"rows", rows}};
    }
    j["pass"] = r.pass();
    return j;
}

inline std::string report_digest(const RunReport& r) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canonical_dump(report_body(r)))));
    return buf;
}

inline json report_json(const RunReport& r) {
    json j = report_body(r);
    j["digest"] = report_digest(r);
    j["wall_time"] = r.wall_time;
    return j;
}

namespace detail {

inline std::string csv_field(const json& v) {
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return canonical_dump(v);
}

inline std::string pad(const std::string& s, size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }

}  // namespace detail

inline std::string emit_report(const RunReport& r, Format f) {
    std::ostringstream os;
    switch (f) {
        case Format::json:
            os << canonical_dump(report_json(r)) << '\n';
            break;
        case Format::csv:
            if (!r.table.empty()) {
                for (size_t i = 0; i < r.table.columns.size(); ++i) os << (i ? "," : "") << r.table.columns[i];
                os << '\n';
                for (const auto& row : r.table.rows) {
                    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << detail::csv_field(row[i]);
                    os << '\n';
                }
            } else {
                os << "name,residual,pass\n";
                for (const auto& c : r.checks)
                    os << detail::csv_field(c.name) << ',' << format_double(c.residual) << ',' << (c.pass ? "true" : "false")
                       << '\n';
            }
            break;
        case Format::text: {
            size_t w = 8;
            for (const auto& c : r.checks) w = std::max(w, c.name.size());
            os << kToolName << ' ' << kToolVersion << "  scenario: " << r.scenario << '\n';
            for (const auto& c : r.checks) {
                char res[32];
                std::snprintf(res, sizeof res, "%11.3e", c.residual);
                os << "  " << detail::pad(c.name, w) << "  " << res << "  " << (c.pass ? "PASS" : "FAIL") << '\n';
            }
            if (!r.table.empty()) {
                std::vector<size_t> cw;
                for (const auto& c : r.table.columns) cw.push_back(c.size());
                for (const auto& row : r.table.rows)
                    for (size_t i = 0; i < row.size() && i < cw.size(); ++i)
                        cw[i] = std::max(cw[i], detail::csv_field(row[i]).size());
                os << '\n';
                for (size_t i = 0; i < cw.size(); ++i) os << "  " << detail::pad(r.table.columns[i], cw[i]);
                os << '\n';
                for (const auto& row : r.table.rows) {
                    for (size_t i = 0; i < row.size(); ++i)
                        os << "  " << detail::pad(detail::csv_field(row[i]), i < cw.size() ? cw[i] : 0);
                    os << '\n';
                }
            }
            char t[64];
            std::snprintf(t, sizeof t, "%.3f", r.wall_time);
            os << "overall: " << (r.pass() ? "PASS" : "FAIL") << "  (" << r.checks.size() << " checks, " << t << " s)\n";
            break;
        }
    }
    return os.str();
}

inline void write_output(const std::string& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << bytes;
    if (!f) throw IoError("write to '" + path + "' failed");
}

}  // namespace wksusy::cli
