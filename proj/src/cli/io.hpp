#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "diskdft/types.hpp"

namespace diskdft::cli {

enum class Format { csv, json };

/// 17 significant digits, general notation, locale independent.
std::string format_number(double v);

using Cell = std::variant<std::monostate, double, long, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

/// CSV with a header row, or {"columns": [...], "rows": [[...], ...]}.
std::string render(const Table& t, Format f);

/// Write to `path` through a temporary file and rename; empty path goes to `out`.
void write_output(const std::string& path, const std::string& content, std::ostream& out);

std::string read_file(const std::string& path);

struct SignalFile {
  int twice_s;
  std::vector<cplx> coefficients;
};

/// {"twice_s": int, "coefficients": [[re, im], ...]}
SignalFile read_signal(const std::string& path);
std::string render_signal(int twice_s, const std::vector<cplx>& coefficients);

/// Numeric table from CSV (header row) or the JSON table layout above.
struct NumericTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};
NumericTable read_table(const std::string& path);

/// Samples with columns k,re,im; k must run 0..N-1 in order.
std::vector<cplx> read_samples(const std::string& path);

/// Query points with columns re,im.
std::vector<cplx> read_points(const std::string& path);

/// Comma-separated numbers.
std::vector<double> parse_list(const std::string& text);

double parse_number(const std::string& text);

}  // namespace diskdft::cli
