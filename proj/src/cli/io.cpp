#include "io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace diskdft::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(line);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string render_cell(const Cell& c, Format f) {
  if (std::holds_alternative<std::monostate>(c)) return f == Format::json ? "null" : "";
  if (const auto* d = std::get_if<double>(&c)) {
    if (f == Format::json && !std::isfinite(*d)) return "null";
    return format_number(*d);
  }
  if (const auto* l = std::get_if<long>(&c)) return std::to_string(*l);
  const auto& s = std::get<std::string>(c);
  return f == Format::json ? json_string(s) : s;
}

double json_number(const nlohmann::json& v, const char* what) {
  if (!v.is_number()) throw InvalidArgument(std::string("expected a number in ") + what);
  return v.get<double>();
}

}  // namespace

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_number(const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (!t.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (t.empty() || res.ec != std::errc() || res.ptr != last) throw InvalidArgument("not a number: '" + text + "'");
  return v;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_number(part));
  if (out.empty()) throw InvalidArgument("empty list");
  return out;
}

std::string render(const Table& t, Format f) {
  std::string out;
  if (f == Format::csv) {
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      if (c) out += ',';
      out += t.columns[c];
    }
    out += '\n';
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) out += ',';
        out += render_cell(row[c], f);
      }
      out += '\n';
    }
    return out;
  }
  out += "{\"columns\": [";
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (c) out += ", ";
    out += json_string(t.columns[c]);
  }
  out += "], \"rows\": [";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out += r ? ",\n  [" : "\n  [";
    for (std::size_t c = 0; c < t.rows[r].size(); ++c) {
      if (c) out += ", ";
      out += render_cell(t.rows[r][c], f);
    }
    out += ']';
  }
  out += t.rows.empty() ? "]}\n" : "\n]}\n";
  return out;
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty()) {
    out << content;
    out.flush();
    return;
  }
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw InvalidArgument("cannot open output file: " + path);
    f << content;
    f.flush();
    if (!f) {
      f.close();
      std::filesystem::remove(tmp);
      throw InvalidArgument("cannot write output file: " + path);
    }
  }
  std::filesystem::rename(tmp, target);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot read file: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

SignalFile read_signal(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument("malformed signal JSON: " + std::string(e.what()));
  }
  if (!j.is_object() || !j.contains("twice_s") || !j.contains("coefficients")) {
    throw InvalidArgument("signal JSON needs \"twice_s\" and \"coefficients\"");
  }
  if (!j["twice_s"].is_number_integer()) throw InvalidArgument("twice_s must be an integer");
  SignalFile out{j["twice_s"].get<int>(), {}};
  const auto& coeffs = j["coefficients"];
  if (!coeffs.is_array()) throw InvalidArgument("coefficients must be an array");
  for (const auto& c : coeffs) {
    if (!c.is_array() || c.size() != 2) throw InvalidArgument("each coefficient must be [re, im]");
    out.coefficients.emplace_back(json_number(c[0], "coefficients"), json_number(c[1], "coefficients"));
  }
  if (out.coefficients.empty()) throw InvalidArgument("coefficient list is empty");
  return out;
}

std::string render_signal(int twice_s, const std::vector<cplx>& coefficients) {
  std::string out = "{\"twice_s\": " + std::to_string(twice_s) + ", \"coefficients\": [";
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    out += i ? ",\n  [" : "\n  [";
    out += format_number(coefficients[i].real()) + ", " + format_number(coefficients[i].imag()) + "]";
  }
  out += "\n]}\n";
  return out;
}

NumericTable read_table(const std::string& path) {
  const std::string text = read_file(path);
  NumericTable t;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw InvalidArgument("malformed JSON table: " + std::string(e.what()));
    }
    if (!j.contains("columns") || !j.contains("rows")) throw InvalidArgument("JSON table needs columns and rows");
    for (const auto& c : j["columns"]) t.columns.push_back(c.get<std::string>());
    for (const auto& row : j["rows"]) {
      std::vector<double> r;
      for (const auto& v : row) r.push_back(json_number(v, path.c_str()));
      if (r.size() != t.columns.size()) throw InvalidArgument("row width does not match header in " + path);
      t.rows.push_back(std::move(r));
    }
    return t;
  }
  std::istringstream is(text);
  std::string line;
  bool header = true;
  while (std::getline(is, line)) {
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    if (header) {
      t.columns = cells;
      header = false;
      continue;
    }
    if (cells.size() != t.columns.size()) throw InvalidArgument("row width does not match header in " + path);
    std::vector<double> r;
    for (const auto& c : cells) r.push_back(parse_number(c));
    t.rows.push_back(std::move(r));
  }
  if (header) throw InvalidArgument("empty table: " + path);
  return t;
}

std::vector<cplx> read_samples(const std::string& path) {
  const auto t = read_table(path);
  if (t.columns != std::vector<std::string>{"k", "re", "im"}) throw InvalidArgument("samples need columns k,re,im");
  std::vector<cplx> out;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (t.rows[i][0] != static_cast<double>(i)) throw InvalidArgument("sample indices must run 0..N-1 in order");
    out.emplace_back(t.rows[i][1], t.rows[i][2]);
  }
  return out;
}

std::vector<cplx> read_points(const std::string& path) {
  const auto t = read_table(path);
  if (t.columns != std::vector<std::string>{"re", "im"}) throw InvalidArgument("query points need columns re,im");
  std::vector<cplx> out;
  for (const auto& r : t.rows) out.emplace_back(r[0], r[1]);
  return out;
}

}  // namespace diskdft::cli
