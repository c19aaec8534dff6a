#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "powsum/verify.hpp"

namespace powsum::verify {

namespace {

using Json = nlohmann::ordered_json;

Json params_to_json(const Params& params) {
    Json out = Json::object();
    for (const auto& [key, value] : params) out[key] = value;
    return out;
}

Params params_from_json(const Json& json) {
    Params out;
    for (const auto& [key, value] : json.items()) out[key] = value.get<std::string>();
    return out;
}

std::string params_inline(const Params& params) {
    std::string out;
    for (const auto& [key, value] : params) {
        if (!out.empty()) out += ';';
        out += key + '=' + value;
    }
    return out;
}

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + '"';
}

Status parse_status(const std::string& text) {
    if (text == "pass") return Status::Pass;
    if (text == "fail") return Status::Fail;
    throw std::invalid_argument("unknown record status '" + text + "'");
}

std::uint64_t parse_count(const std::string& text) { return to_u64(parse_natural(text)); }

std::string emit_json(const VerificationReport& report) {
    Json records = Json::array();
    for (const auto& record : report.records) {
        Json entry;
        entry["theorem_id"] = record.theorem_id;
        entry["params"] = params_to_json(record.params);
        entry["status"] = std::string(to_string(record.status));
        entry["expected"] = record.expected;
        entry["actual"] = record.actual;
        entry["counterexample"] =
            record.counterexample ? params_to_json(*record.counterexample) : Json(nullptr);
        records.push_back(std::move(entry));
    }
    Json summary = Json::object();
    for (const auto& [id, tally] : report.summary) {
        summary[id] = {{"pass", std::to_string(tally.pass)}, {"fail", std::to_string(tally.fail)}};
    }
    Json grid = Json::object();
    for (const auto& [key, value] : report.grid) grid[key] = value;

    Json root;
    root["records"] = std::move(records);
    root["summary"] = std::move(summary);
    root["grid"] = std::move(grid);
    root["wall_time_ms"] = report.wall_time_ms;
    return root.dump();
}

std::string emit_csv(const VerificationReport& report) {
    std::string out = "theorem_id,params,status,expected,actual\n";
    for (const auto& record : report.records) {
        out += csv_field(record.theorem_id) + ',' + csv_field(params_inline(record.params)) + ',' +
               std::string(to_string(record.status)) + ',' + csv_field(record.expected) + ',' +
               csv_field(record.actual) + '\n';
    }
    return out;
}

std::string emit_text(const VerificationReport& report) {
    std::ostringstream out;
    for (const auto& [id, tally] : report.summary) {
        out << id << ": " << tally.pass << " pass, " << tally.fail << " fail\n";
    }
    for (const auto& record : report.records) {
        if (record.status != Status::Fail) continue;
        out << "\nFAIL " << record.theorem_id << ' ' << params_inline(record.params) << '\n'
            << "  expected: " << record.expected << '\n'
            << "  actual:   " << record.actual << '\n';
        if (record.counterexample) {
            out << "  counterexample: " << params_inline(*record.counterexample) << '\n';
        }
    }
    out << (report.all_passed() ? "all checks passed" : "FAILURES: " + std::to_string(report.failures()))
        << " (" << report.records.size() << " records, " << report.wall_time_ms << " ms)\n";
    return out.str();
}

}  // namespace

std::string_view to_string(Status status) noexcept {
    return status == Status::Pass ? "pass" : "fail";
}

ReportFormat parse_report_format(std::string_view name) {
    if (name == "json") return ReportFormat::Json;
    if (name == "csv") return ReportFormat::Csv;
    if (name == "text") return ReportFormat::Text;
    throw std::invalid_argument("unknown report format '" + std::string(name) +
                                "' (expected json, csv or text)");
}

std::string emit_report(const VerificationReport& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::Json: return emit_json(report);
        case ReportFormat::Csv: return emit_csv(report);
        case ReportFormat::Text: return emit_text(report);
    }
    throw std::invalid_argument("unknown report format");
}

std::string emit_report(const VerificationReport& report, std::string_view format) {
    return emit_report(report, parse_report_format(format));
}

VerificationReport parse_report_json(std::string_view text) {
    const Json root = Json::parse(text);
    VerificationReport report;
    for (const auto& entry : root.at("records")) {
        VerificationRecord record;
        record.theorem_id = entry.at("theorem_id").get<std::string>();
        record.params = params_from_json(entry.at("params"));
        record.status = parse_status(entry.at("status").get<std::string>());
        record.expected = entry.at("expected").get<std::string>();
        record.actual = entry.at("actual").get<std::string>();
        if (entry.contains("counterexample") && !entry["counterexample"].is_null()) {
            record.counterexample = params_from_json(entry["counterexample"]);
        }
        report.records.push_back(std::move(record));
    }
    for (const auto& [id, tally] : root.at("summary").items()) {
        report.summary[id] = Tally{parse_count(tally.at("pass").get<std::string>()),
                                   parse_count(tally.at("fail").get<std::string>())};
    }
    for (const auto& [key, value] : root.at("grid").items()) {
        report.grid[key] = value.get<std::string>();
    }
    report.wall_time_ms = root.at("wall_time_ms").get<std::uint64_t>();
    return report;
}

}  // namespace powsum::verify
