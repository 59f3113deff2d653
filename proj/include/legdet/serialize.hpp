#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "legdet/integer.hpp"
#include "legdet/verify.hpp"

namespace legdet {

/// Machine formats (csv, jsonl) are compatibility surfaces; bump the version
/// whenever a column is added, removed or renamed. The human format is not.
inline constexpr int kScanSchemaVersion = 1;
inline constexpr std::string_view kScanCsvHeader =
    "p,residue_class,det_A1,det_A2,j_minus_1,half_sum,c_p,jacobi_p_cp,class_number";

namespace detail {

inline std::string opt_str(const std::optional<Int>& v) { return v ? v->str() : std::string(); }

inline std::optional<Int> parse_opt_int(std::string_view field) {
    if (field.empty()) return std::nullopt;
    return Int(std::string(field));
}

inline std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == sep) {
            out.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

}  // namespace detail

/// One CSV line per row; undefined branch fields stay empty, never 0.
inline std::string scan_row_to_csv(const ScanRow& row) {
    std::ostringstream os;
    os << row.p << ',' << row.residue_class << ',' << row.det_A1.str() << ','
       << detail::opt_str(row.det_A2) << ',' << detail::opt_str(row.j_minus_1) << ','
       << row.half_sum.str() << ',' << row.c_p.str() << ',' << row.jacobi_p_cp << ','
       << detail::opt_str(row.class_number);
    return os.str();
}

/// One JSON object per row, same keys as the CSV columns; undefined branch
/// fields are absent. All integers are decimal with no width limit, so the
/// lines are parsed with this module, not a double-backed JSON reader.
inline std::string scan_row_to_jsonl(const ScanRow& row) {
    std::ostringstream os;
    os << "{\"p\":" << row.p << ",\"residue_class\":" << row.residue_class
       << ",\"det_A1\":" << row.det_A1.str();
    if (row.det_A2) os << ",\"det_A2\":" << row.det_A2->str();
    if (row.j_minus_1) os << ",\"j_minus_1\":" << row.j_minus_1->str();
    os << ",\"half_sum\":" << row.half_sum.str() << ",\"c_p\":" << row.c_p.str()
       << ",\"jacobi_p_cp\":" << row.jacobi_p_cp;
    if (row.class_number) os << ",\"class_number\":" << row.class_number->str();
    os << "}";
    return os.str();
}

inline std::string scan_rows_to_csv(const std::vector<ScanRow>& rows) {
    std::string out{kScanCsvHeader};
    out += '\n';
    for (const auto& row : rows) {
        out += scan_row_to_csv(row);
        out += '\n';
    }
    return out;
}

inline std::string scan_rows_to_jsonl(const std::vector<ScanRow>& rows) {
    std::string out;
    for (const auto& row : rows) {
        out += scan_row_to_jsonl(row);
        out += '\n';
    }
    return out;
}

inline ScanRow parse_scan_csv_row(std::string_view line) {
    const auto fields = detail::split(line, ',');
    if (fields.size() != 9) {
        throw std::invalid_argument("scan csv row: expected 9 fields, got " +
                                    std::to_string(fields.size()));
    }
    ScanRow row;
    row.p = std::stoll(std::string(fields[0]));
    row.residue_class = std::stoi(std::string(fields[1]));
    row.det_A1 = Int(std::string(fields[2]));
    row.det_A2 = detail::parse_opt_int(fields[3]);
    row.j_minus_1 = detail::parse_opt_int(fields[4]);
    row.half_sum = Int(std::string(fields[5]));
    row.c_p = Int(std::string(fields[6]));
    row.jacobi_p_cp = std::stoi(std::string(fields[7]));
    row.class_number = detail::parse_opt_int(fields[8]);
    return row;
}

/// Parses the output of scan_rows_to_csv; validates the header.
inline std::vector<ScanRow> parse_scan_csv(std::string_view text) {
    std::vector<ScanRow> rows;
    std::size_t pos = 0;
    bool saw_header = false;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (line.empty()) continue;
        if (!saw_header) {
            if (line != kScanCsvHeader) {
                throw std::invalid_argument("scan csv: unrecognized header: " + std::string(line));
            }
            saw_header = true;
            continue;
        }
        rows.push_back(parse_scan_csv_row(line));
    }
    if (!saw_header) throw std::invalid_argument("scan csv: missing header");
    return rows;
}

/// Parses one flat JSON object of integer-valued keys, as emitted by
/// scan_row_to_jsonl. Lossless for integers of any width.
inline ScanRow parse_scan_jsonl_row(std::string_view line) {
    ScanRow row;
    bool saw_p = false, saw_cp = false;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    };
    skip_ws();
    if (i >= line.size() || line[i] != '{') throw std::invalid_argument("jsonl row: expected '{'");
    ++i;
    for (;;) {
        skip_ws();
        if (i < line.size() && line[i] == '}') break;
        if (i >= line.size() || line[i] != '"') throw std::invalid_argument("jsonl row: expected key");
        std::size_t key_end = line.find('"', i + 1);
        if (key_end == std::string_view::npos) throw std::invalid_argument("jsonl row: unterminated key");
        std::string_view key = line.substr(i + 1, key_end - i - 1);
        i = key_end + 1;
        skip_ws();
        if (i >= line.size() || line[i] != ':') throw std::invalid_argument("jsonl row: expected ':'");
        ++i;
        skip_ws();
        std::size_t val_start = i;
        while (i < line.size() && (line[i] == '-' || (line[i] >= '0' && line[i] <= '9'))) ++i;
        if (i == val_start) throw std::invalid_argument("jsonl row: expected integer value");
        Int value{std::string(line.substr(val_start, i - val_start))};

        if (key == "p") {
            row.p = static_cast<std::int64_t>(value);
            saw_p = true;
        } else if (key == "residue_class") {
            row.residue_class = static_cast<int>(value);
        } else if (key == "det_A1") {
            row.det_A1 = value;
        } else if (key == "det_A2") {
            row.det_A2 = value;
        } else if (key == "j_minus_1") {
            row.j_minus_1 = value;
        } else if (key == "half_sum") {
            row.half_sum = value;
        } else if (key == "c_p") {
            row.c_p = value;
            saw_cp = true;
        } else if (key == "jacobi_p_cp") {
            row.jacobi_p_cp = static_cast<int>(value);
        } else if (key == "class_number") {
            row.class_number = value;
        } else {
            throw std::invalid_argument("jsonl row: unknown key: " + std::string(key));
        }
        skip_ws();
        if (i < line.size() && line[i] == ',') {
            ++i;
            continue;
        }
        if (i < line.size() && line[i] == '}') break;
        throw std::invalid_argument("jsonl row: expected ',' or '}'");
    }
    if (!saw_p || !saw_cp) throw std::invalid_argument("jsonl row: missing required keys");
    return row;
}

inline std::vector<ScanRow> parse_scan_jsonl(std::string_view text) {
    std::vector<ScanRow> rows;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (!line.empty()) rows.push_back(parse_scan_jsonl_row(line));
    }
    return rows;
}

inline std::string scan_row_to_human(const ScanRow& row) {
    std::ostringstream os;
    os << "p=" << row.p << " (mod 4: " << row.residue_class << ")  c_p=" << row.c_p.str()
       << "  (p/c_p)=" << row.jacobi_p_cp << "  |A_1|=" << row.det_A1.str();
    if (row.det_A2) os << "  |A_2|=" << row.det_A2->str();
    if (row.j_minus_1) os << "  J(-1)=" << row.j_minus_1->str();
    os << "  half_sum=" << row.half_sum.str();
    if (row.class_number) os << "  h(-p)=" << row.class_number->str();
    return os.str();
}

inline constexpr std::string_view kReportCsvHeader = "claim_id,p,passed,parameters,witness";

namespace detail {

inline std::string csv_escape(std::string_view s) {
    bool needs_quotes = s.find_first_of(",\"\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string params_compact(const VerificationReport& r) {
    std::string out;
    for (const auto& [k, v] : r.parameters) {
        if (!out.empty()) out += ';';
        out += k + "=" + v;
    }
    return out;
}

inline std::string json_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace detail

inline std::string report_to_csv(const VerificationReport& r) {
    return r.claim_id + "," + std::to_string(r.p) + "," + (r.passed ? "true" : "false") + "," +
           detail::csv_escape(detail::params_compact(r)) + "," + detail::csv_escape(r.witness);
}

inline std::string report_to_jsonl(const VerificationReport& r) {
    std::ostringstream os;
    os << "{\"claim_id\":\"" << detail::json_escape(r.claim_id) << "\",\"p\":" << r.p
       << ",\"passed\":" << (r.passed ? "true" : "false");
    if (!r.parameters.empty()) {
        os << ",\"parameters\":{";
        bool first = true;
        for (const auto& [k, v] : r.parameters) {
            if (!first) os << ',';
            first = false;
            os << '"' << detail::json_escape(k) << "\":\"" << detail::json_escape(v) << '"';
        }
        os << '}';
    }
    os << ",\"witness\":\"" << detail::json_escape(r.witness) << "\"}";
    return os.str();
}

inline std::string report_to_human(const VerificationReport& r) {
    std::string out = r.passed ? "[PASS] " : "[FAIL] ";
    out += r.claim_id + " p=" + std::to_string(r.p);
    const std::string params = detail::params_compact(r);
    if (!params.empty()) out += " (" + params + ")";
    if (!r.passed) out += "  witness: " + r.witness;
    return out;
}

}  // namespace legdet
