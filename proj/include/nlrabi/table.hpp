#ifndef NLRABI_TABLE_HPP
#define NLRABI_TABLE_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace nlrabi {

inline constexpr const char* kVersion = "0.1.0";

enum class TableFormat { csv, json };

struct TableMeta {
    std::string version = kVersion;
    std::vector<std::string> spec_echo;  // config-format echo of the producing spec
};

// Column-named numeric table with one optional error tag per row. Row order
// is deterministic (row-major over the sweep grid) and independent of worker
// count.
struct SweepTable {
    TableMeta meta;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> row_errors;  // "" for clean rows

    friend bool operator==(const SweepTable&, const SweepTable&) = default;
};

// CSV: '#'-prefixed meta preamble, header row, 17-significant-digit floats
// (IEEE-754 round-trip safe), trailing `error` column. The preamble carries a
// `created` timestamp unless with_timestamp is false; everything else is a
// pure function of the table.
void emit_csv(const SweepTable& table, std::ostream& os, bool with_timestamp = true);

// JSON object {meta, columns, rows, errors}.
void emit_json(const SweepTable& table, std::ostream& os, bool with_timestamp = true);

// Writes to path ("-" for stdout). I/O failures surface as IoError with the
// path in the message.
void emit(const SweepTable& table, TableFormat format, const std::string& path);

// Inverse of emit_csv; numeric cells round-trip bit-exactly. Meta lines other
// than the spec echo are ignored.
SweepTable parse_csv(std::istream& is);

std::string format_double(double v);  // %.17g

}  // namespace nlrabi

#endif
