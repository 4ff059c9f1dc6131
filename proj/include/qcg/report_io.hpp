#pragma once

// GrowthReport tables: comma-separated with one header row and 17
// significant digits, or a JSON array of objects.

#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qcg/bounds.hpp"
#include "qcg/errors.hpp"
#include "qcg/radial_table.hpp"

namespace qcg {

inline constexpr std::string_view kReportHeader = "R,M_R,I_R,Lambda_R,envelope,ratio,floor,status";

inline std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

inline void write_reports_csv(std::ostream& out, const std::vector<GrowthReport>& reports) {
    out << kReportHeader << '\n';
    for (const auto& r : reports) {
        out << format_real(r.R) << ',' << format_real(r.M_R) << ',' << format_real(r.I_R) << ','
            << format_real(r.Lambda_R) << ',' << format_real(r.envelope) << ','
            << format_real(r.ratio) << ',' << (r.floor ? format_real(*r.floor) : std::string{})
            << ',' << (r.converged ? "ok" : "nonconverged") << '\n';
    }
}

/// Reads a table written by write_reports_csv. The status column may be
/// omitted, in which case every row counts as converged.
inline std::vector<GrowthReport> read_reports_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError("report table: missing header");
    }
    const auto header = detail::trim(line);
    const bool with_status = header == kReportHeader;
    if (!with_status && header != kReportHeader.substr(0, kReportHeader.rfind(','))) {
        throw ParseError("report table: unexpected header '" + std::string(header) + "'");
    }
    std::vector<GrowthReport> reports;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (detail::trim(line).empty()) {
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cells.push_back(cell);
        }
        if (!line.empty() && line.back() == ',') {
            cells.emplace_back();
        }
        const std::size_t expected = with_status ? 8 : 7;
        if (cells.size() != expected) {
            throw ParseError("report table line " + std::to_string(lineno) + ": expected " +
                             std::to_string(expected) + " columns");
        }
        GrowthReport r;
        double* numeric[] = {&r.R, &r.M_R, &r.I_R, &r.Lambda_R, &r.envelope, &r.ratio};
        for (std::size_t i = 0; i < 6; ++i) {
            if (!detail::parse_double(cells[i], *numeric[i])) {
                throw ParseError("report table line " + std::to_string(lineno) +
                                 ": bad number '" + cells[i] + "'");
            }
        }
        if (!detail::trim(cells[6]).empty()) {
            double floor = 0.0;
            if (!detail::parse_double(cells[6], floor)) {
                throw ParseError("report table line " + std::to_string(lineno) + ": bad floor");
            }
            r.floor = floor;
        }
        if (with_status) {
            const auto status = detail::trim(cells[7]);
            if (status != "ok" && status != "nonconverged") {
                throw ParseError("report table line " + std::to_string(lineno) + ": bad status");
            }
            r.converged = status == "ok";
        }
        reports.push_back(r);
    }
    return reports;
}

inline nlohmann::json reports_to_json(const std::vector<GrowthReport>& reports) {
    auto rows = nlohmann::json::array();
    for (const auto& r : reports) {
        rows.push_back({{"R", r.R},
                        {"M_R", r.M_R},
                        {"I_R", r.I_R},
                        {"Lambda_R", r.Lambda_R},
                        {"envelope", r.envelope},
                        {"ratio", r.ratio},
                        {"floor", r.floor ? nlohmann::json(*r.floor) : nlohmann::json(nullptr)},
                        {"status", r.converged ? "ok" : "nonconverged"}});
    }
    return rows;
}

}  // namespace qcg
