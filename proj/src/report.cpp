#include "cyclomoment/report.hpp"

#include <cmath>
#include <cstdio>

namespace cyclo {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void write_json_value(std::ostream& out, const ReportRow::Value& v) {
    if (std::holds_alternative<long long>(v)) {
        out << std::get<long long>(v);
    } else if (std::holds_alternative<double>(v)) {
        const double d = std::get<double>(v);
        if (std::isfinite(d))
            out << format_double(d);
        else
            out << "null";
    } else {
        out << '"' << std::get<std::string>(v) << '"';  // keys/labels only, no escapes needed
    }
}

void write_csv_value(std::ostream& out, const ReportRow::Value& v) {
    if (std::holds_alternative<long long>(v)) {
        out << std::get<long long>(v);
    } else if (std::holds_alternative<double>(v)) {
        const double d = std::get<double>(v);
        if (std::isfinite(d)) out << format_double(d);
    } else {
        out << std::get<std::string>(v);
    }
}

}  // namespace

void write_rows_json(std::ostream& out, const std::vector<ReportRow>& rows) {
    out << "[\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out << '{';
        for (std::size_t j = 0; j < rows[i].fields.size(); ++j) {
            if (j) out << ',';
            out << '"' << rows[i].fields[j].first << "\":";
            write_json_value(out, rows[i].fields[j].second);
        }
        out << '}' << (i + 1 == rows.size() ? "" : ",") << '\n';
    }
    out << "]\n";
}

void write_rows_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
    if (rows.empty()) return;
    for (std::size_t j = 0; j < rows[0].fields.size(); ++j) {
        if (j) out << ',';
        out << rows[0].fields[j].first;
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t j = 0; j < row.fields.size(); ++j) {
            if (j) out << ',';
            write_csv_value(out, row.fields[j].second);
        }
        out << '\n';
    }
}

}  // namespace cyclo
