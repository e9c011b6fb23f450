#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "growthlab/common.hpp"

namespace growthlab {

// One audited run. Flat, versioned schema so report files stay stable for
// downstream plotting.
struct ExperimentReport {
    int schema = 1;
    u64 run_id = 0;
    std::string audit;
    u64 p = 0;
    u64 seed = 0;
    u64 size_a = 0, size_b = 0, size_c = 0;
    u64 card_diff = 0, card_shifted = 0, card_ab = 0, card_t = 0;
    double lhs = 0.0, rhs = 0.0, ratio = 0.0;
    bool pass = false;
    double wall_ms = 0.0;

    bool operator==(const ExperimentReport&) const = default;
};

// Ratios carry 12 significant digits in text form; integers stay integers.
inline std::string format_ratio(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// ratio must equal lhs/rhs recomputed (rhs = 0 pairs with ratio = 0);
// tolerance covers the 12-digit text round trip.
inline bool report_consistent(const ExperimentReport& r) {
    if (r.rhs == 0.0) return r.ratio == 0.0;
    const double expected = r.lhs / r.rhs;
    return std::abs(r.ratio - expected) <= 1e-9 * std::max(1.0, std::abs(expected));
}

inline nlohmann::json report_to_json(const ExperimentReport& r) {
    return nlohmann::json{{"schema", r.schema},
                          {"run_id", r.run_id},
                          {"audit", r.audit},
                          {"p", r.p},
                          {"seed", r.seed},
                          {"size_a", r.size_a},
                          {"size_b", r.size_b},
                          {"size_c", r.size_c},
                          {"card_diff", r.card_diff},
                          {"card_shifted", r.card_shifted},
                          {"card_ab", r.card_ab},
                          {"card_t", r.card_t},
                          {"lhs", r.lhs},
                          {"rhs", r.rhs},
                          {"ratio", r.ratio},
                          {"pass", r.pass},
                          {"wall_ms", r.wall_ms}};
}

inline ExperimentReport report_from_json(const nlohmann::json& j) {
    ExperimentReport r;
    r.schema = j.at("schema").get<int>();
    r.run_id = j.at("run_id").get<u64>();
    r.audit = j.at("audit").get<std::string>();
    r.p = j.at("p").get<u64>();
    r.seed = j.at("seed").get<u64>();
    r.size_a = j.at("size_a").get<u64>();
    r.size_b = j.at("size_b").get<u64>();
    r.size_c = j.at("size_c").get<u64>();
    r.card_diff = j.at("card_diff").get<u64>();
    r.card_shifted = j.at("card_shifted").get<u64>();
    r.card_ab = j.at("card_ab").get<u64>();
    r.card_t = j.at("card_t").get<u64>();
    r.lhs = j.at("lhs").get<double>();
    r.rhs = j.at("rhs").get<double>();
    r.ratio = j.at("ratio").get<double>();
    r.pass = j.at("pass").get<bool>();
    r.wall_ms = j.at("wall_ms").get<double>();
    return r;
}

inline const char* kCsvHeader =
    "schema,run_id,audit,p,seed,size_a,size_b,size_c,card_diff,card_shifted,card_ab,card_t,"
    "lhs,rhs,ratio,pass,wall_ms";

inline std::string report_to_csv_row(const ExperimentReport& r) {
    std::ostringstream os;
    os << r.schema << ',' << r.run_id << ',' << r.audit << ',' << r.p << ',' << r.seed << ','
       << r.size_a << ',' << r.size_b << ',' << r.size_c << ',' << r.card_diff << ','
       << r.card_shifted << ',' << r.card_ab << ',' << r.card_t << ',' << format_ratio(r.lhs)
       << ',' << format_ratio(r.rhs) << ',' << format_ratio(r.ratio) << ','
       << (r.pass ? "true" : "false") << ',' << format_ratio(r.wall_ms);
    return os.str();
}

inline ExperimentReport report_from_csv_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) cells.push_back(cell);
    if (cells.size() != 17) throw std::invalid_argument("CSV row: expected 17 fields");
    ExperimentReport r;
    r.schema = std::stoi(cells[0]);
    r.run_id = std::stoull(cells[1]);
    r.audit = cells[2];
    r.p = std::stoull(cells[3]);
    r.seed = std::stoull(cells[4]);
    r.size_a = std::stoull(cells[5]);
    r.size_b = std::stoull(cells[6]);
    r.size_c = std::stoull(cells[7]);
    r.card_diff = std::stoull(cells[8]);
    r.card_shifted = std::stoull(cells[9]);
    r.card_ab = std::stoull(cells[10]);
    r.card_t = std::stoull(cells[11]);
    r.lhs = std::stod(cells[12]);
    r.rhs = std::stod(cells[13]);
    r.ratio = std::stod(cells[14]);
    r.pass = cells[15] == "true";
    r.wall_ms = std::stod(cells[16]);
    return r;
}

enum class ReportFormat { Json, Csv };

inline void emit_report(const std::vector<ExperimentReport>& reports, ReportFormat format,
                        const std::string& path) {
    for (const ExperimentReport& r : reports) {
        if (!report_consistent(r))
            throw audit_error("emit_report: ratio field inconsistent with lhs/rhs");
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("emit_report: cannot open " + path);
    if (format == ReportFormat::Json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const ExperimentReport& r : reports) arr.push_back(report_to_json(r));
        out << arr.dump(2) << '\n';
    } else {
        out << kCsvHeader << '\n';
        for (const ExperimentReport& r : reports) out << report_to_csv_row(r) << '\n';
    }
    if (!out) throw std::runtime_error("emit_report: write failed for " + path);
}

inline std::vector<ExperimentReport> parse_reports(ReportFormat format, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("parse_reports: cannot open " + path);
    std::vector<ExperimentReport> out;
    if (format == ReportFormat::Json) {
        nlohmann::json arr = nlohmann::json::parse(in);
        for (const auto& j : arr) out.push_back(report_from_json(j));
    } else {
        std::string line;
        if (!std::getline(in, line) || line != kCsvHeader)
            throw std::invalid_argument("parse_reports: bad CSV header");
        while (std::getline(in, line)) {
            if (!line.empty()) out.push_back(report_from_csv_row(line));
        }
    }
    return out;
}

} // namespace growthlab
