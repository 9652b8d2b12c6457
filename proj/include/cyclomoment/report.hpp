#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace cyclo {

// Flat machine-readable rows for the CLI: JSON (one object per row) or CSV.
// Doubles are serialized at 17 significant digits so values round-trip.
struct ReportRow {
    using Value = std::variant<long long, double, std::string>;
    std::vector<std::pair<std::string, Value>> fields;

    ReportRow& add(const std::string& key, long long v) {
        fields.emplace_back(key, Value(v));
        return *this;
    }
    ReportRow& add(const std::string& key, int v) { return add(key, (long long)v); }
    ReportRow& add(const std::string& key, double v) {
        fields.emplace_back(key, Value(v));
        return *this;
    }
    ReportRow& add(const std::string& key, const std::string& v) {
        fields.emplace_back(key, Value(v));
        return *this;
    }
};

std::string format_double(double v);  // %.17g

void write_rows_json(std::ostream& out, const std::vector<ReportRow>& rows);
void write_rows_csv(std::ostream& out, const std::vector<ReportRow>& rows);

}  // namespace cyclo
