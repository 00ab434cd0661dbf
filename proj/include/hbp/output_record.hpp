#pragma once

// Machine-readable command output: one JSON document, or a header row plus
// data rows in CSV/TSV. Rationals are always strings ("p/q").

#include <hbp/identity_suite.hpp>
#include <hbp/rational.hpp>

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hbp {

using ordered_json = nlohmann::ordered_json;

inline constexpr std::string_view schema_version = "1";

enum class OutputFormat { json, csv, tsv };

inline std::optional<OutputFormat> parse_output_format(std::string_view s)
{
    if (s == "json") {
        return OutputFormat::json;
    }
    if (s == "csv") {
        return OutputFormat::csv;
    }
    if (s == "tsv") {
        return OutputFormat::tsv;
    }
    return std::nullopt;
}

struct OutputRecord {
    std::string command;
    ordered_json parameters = ordered_json::object();
    std::vector<ordered_json> rows; // each an object; key order is column order
    std::string status = "n/a";     // "pass" | "fail" | "n/a"

    ordered_json to_json() const
    {
        ordered_json doc = ordered_json::object();
        doc["schema_version"] = std::string(schema_version);
        doc["command"] = command;
        doc["parameters"] = parameters;
        doc["rows"] = ordered_json::array();
        for (const auto &r : rows) {
            doc["rows"].push_back(r);
        }
        doc["status"] = status;
        return doc;
    }

    static OutputRecord from_json(const ordered_json &doc)
    {
        OutputRecord rec;
        rec.command = doc.at("command").get<std::string>();
        rec.parameters = doc.at("parameters");
        for (const auto &r : doc.at("rows")) {
            rec.rows.push_back(r);
        }
        rec.status = doc.at("status").get<std::string>();
        return rec;
    }
};

namespace detail {

inline std::string cell_text(const ordered_json &v)
{
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_array()) {
        std::string s;
        for (const auto &e : v) {
            if (!s.empty()) {
                s += ' ';
            }
            s += cell_text(e);
        }
        return s;
    }
    if (v.is_object()) {
        std::string s;
        for (const auto &[k, e] : v.items()) {
            if (!s.empty()) {
                s += ';';
            }
            s += k + "=" + cell_text(e);
        }
        return s;
    }
    if (v.is_null()) {
        return "";
    }
    return v.dump();
}

inline std::string csv_escape(const std::string &s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

inline std::string tsv_escape(std::string s)
{
    for (char &c : s) {
        if (c == '\t' || c == '\n') {
            c = ' ';
        }
    }
    return s;
}

} // namespace detail

/// Column set is the union of row keys in first-seen order.
inline void write_delimited(std::ostream &os, const OutputRecord &rec, char sep)
{
    std::vector<std::string> columns;
    for (const auto &row : rec.rows) {
        for (const auto &[k, v] : row.items()) {
            if (std::find(columns.begin(), columns.end(), k) == columns.end()) {
                columns.push_back(k);
            }
        }
    }
    auto escape = [sep](const std::string &s) {
        return sep == ',' ? detail::csv_escape(s) : detail::tsv_escape(s);
    };
    for (std::size_t i = 0; i < columns.size(); ++i) {
        os << (i ? std::string(1, sep) : "") << escape(columns[i]);
    }
    os << '\n';
    for (const auto &row : rec.rows) {
        for (std::size_t i = 0; i < columns.size(); ++i) {
            const auto it = row.find(columns[i]);
            os << (i ? std::string(1, sep) : "") << (it == row.end() ? "" : escape(detail::cell_text(*it)));
        }
        os << '\n';
    }
}

inline void write_record(std::ostream &os, const OutputRecord &rec, OutputFormat format)
{
    switch (format) {
    case OutputFormat::json: os << rec.to_json().dump(2) << '\n'; return;
    case OutputFormat::csv: write_delimited(os, rec, ','); return;
    case OutputFormat::tsv: write_delimited(os, rec, '\t'); return;
    }
}

inline ordered_json params_to_json(const ParamTuple &params)
{
    ordered_json o = ordered_json::object();
    for (const auto &[k, v] : params) {
        o[k] = v;
    }
    return o;
}

/// One JSON row per report. Elapsed time is left out unless asked for so
/// that repeated runs are byte-identical.
inline ordered_json report_to_json(const IdentityReport &r, bool with_timing = false)
{
    ordered_json row = ordered_json::object();
    row["id"] = std::string(to_string(r.id));
    row["status"] = r.passed() ? "pass" : "fail";
    row["checked"] = r.checked;
    row["failed"] = r.failed;
    if (with_timing) {
        row["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(r.elapsed).count();
    }
    row["failures"] = ordered_json::array();
    for (const auto &f : r.failures) {
        row["failures"].push_back({{"params", params_to_json(f.params)},
                                   {"lhs", to_string(f.lhs)},
                                   {"rhs", to_string(f.rhs)}});
    }
    row["observations"] = ordered_json::array();
    for (const auto &o : r.observations) {
        row["observations"].push_back({{"params", params_to_json(o.params)},
                                       {"lhs", to_string(o.lhs)},
                                       {"rhs", to_string(o.rhs)},
                                       {"holds", o.holds},
                                       {"note", o.note}});
    }
    row["notes"] = r.notes;
    return row;
}

/// Flat rows for CSV/TSV: a summary row per report followed by one row per
/// recorded failure and observation.
inline std::vector<ordered_json> report_to_flat_rows(const IdentityReport &r, bool with_timing = false)
{
    std::vector<ordered_json> rows;
    ordered_json summary = ordered_json::object();
    summary["id"] = std::string(to_string(r.id));
    summary["kind"] = "summary";
    summary["status"] = r.passed() ? "pass" : "fail";
    summary["checked"] = r.checked;
    summary["failed"] = r.failed;
    summary["params"] = "";
    summary["lhs"] = "";
    summary["rhs"] = "";
    summary["note"] = "";
    for (std::size_t i = 0; i < r.notes.size(); ++i) {
        summary["note"] = summary["note"].get<std::string>() + (i ? " | " : "") + r.notes[i];
    }
    if (with_timing) {
        summary["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(r.elapsed).count();
    }
    rows.push_back(summary);
    for (const auto &f : r.failures) {
        rows.push_back({{"id", std::string(to_string(r.id))},
                        {"kind", "failure"},
                        {"status", "fail"},
                        {"checked", ""},
                        {"failed", ""},
                        {"params", params_to_json(f.params)},
                        {"lhs", to_string(f.lhs)},
                        {"rhs", to_string(f.rhs)},
                        {"note", ""}});
    }
    for (const auto &o : r.observations) {
        rows.push_back({{"id", std::string(to_string(r.id))},
                        {"kind", "observation"},
                        {"status", o.holds ? "holds" : "differs"},
                        {"checked", ""},
                        {"failed", ""},
                        {"params", params_to_json(o.params)},
                        {"lhs", to_string(o.lhs)},
                        {"rhs", to_string(o.rhs)},
                        {"note", o.note}});
    }
    return rows;
}

} // namespace hbp
