#include "nlrabi/table.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nlrabi/errors.hpp"

namespace nlrabi {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string timestamp_utc() {
    std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    return buf;
}

std::string sanitize_tag(const std::string& s) {
    std::string out = s;
    for (char& c : out)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return out;
}

}  // namespace

void emit_csv(const SweepTable& table, std::ostream& os, bool with_timestamp) {
    os << "# nlrabi-table v" << table.meta.version << "\n";
    if (with_timestamp) os << "# created: " << timestamp_utc() << "\n";
    for (const auto& line : table.meta.spec_echo) os << "# spec: " << line << "\n";

    for (size_t c = 0; c < table.columns.size(); ++c) {
        if (c) os << ",";
        os << table.columns[c];
    }
    os << ",error\n";

    for (size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        for (size_t c = 0; c < row.size(); ++c) {
            if (c) os << ",";
            os << format_double(row[c]);
        }
        os << "," << (r < table.row_errors.size() ? sanitize_tag(table.row_errors[r]) : "")
           << "\n";
    }
}

void emit_json(const SweepTable& table, std::ostream& os, bool with_timestamp) {
    nlohmann::json j;
    j["meta"]["version"] = table.meta.version;
    if (with_timestamp) j["meta"]["created"] = timestamp_utc();
    j["meta"]["spec"] = table.meta.spec_echo;
    j["columns"] = table.columns;
    j["rows"] = table.rows;
    j["errors"] = table.row_errors;
    os << j.dump(2) << "\n";
}

void emit(const SweepTable& table, TableFormat format, const std::string& path) {
    const auto write = [&](std::ostream& os) {
        if (format == TableFormat::csv)
            emit_csv(table, os);
        else
            emit_json(table, os);
    };
    if (path.empty() || path == "-") {
        write(std::cout);
        if (!std::cout) throw IoError("emit: write to stdout failed");
        return;
    }
    std::ofstream f(path);
    if (!f) throw IoError("emit: cannot open '" + path + "' for writing");
    write(f);
    f.flush();
    if (!f) throw IoError("emit: write to '" + path + "' failed");
}

SweepTable parse_csv(std::istream& is) {
    SweepTable table;
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string spec_prefix = "# spec: ";
            if (line.rfind(spec_prefix, 0) == 0)
                table.meta.spec_echo.push_back(line.substr(spec_prefix.size()));
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.push_back("");
        if (!have_header) {
            if (cells.empty() || cells.back() != "error")
                throw ConfigError("parse_csv: header must end with 'error'");
            table.columns.assign(cells.begin(), cells.end() - 1);
            have_header = true;
            continue;
        }
        if (cells.size() != table.columns.size() + 1)
            throw ConfigError("parse_csv: row width does not match header");
        std::vector<double> row(table.columns.size());
        for (size_t c = 0; c < table.columns.size(); ++c) {
            try {
                row[c] = std::stod(cells[c]);
            } catch (const std::exception&) {
                throw ConfigError("parse_csv: bad numeric cell '" + cells[c] + "'");
            }
        }
        table.rows.push_back(std::move(row));
        table.row_errors.push_back(cells.back());
    }
    if (!have_header) throw ConfigError("parse_csv: no header row found");
    return table;
}

}  // namespace nlrabi
