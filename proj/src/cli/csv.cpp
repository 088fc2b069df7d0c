#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

#include "ckh/cli/run.hpp"
#include "ckh/error.hpp"

namespace ckh {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void emit_csv(const CsvTable& table, std::ostream& out) {
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) throw PreconditionError("csv table is not rectangular");
  }
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << quote(table.columns[i]);
  }
  out << "\r\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << "\r\n";
  }
}

void emit_csv(const CsvTable& table, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot open '" + path + "' for writing");
  emit_csv(table, f);
  f.flush();
  if (!f) throw ParseError("error writing '" + path + "'");
}

}  // namespace ckh
