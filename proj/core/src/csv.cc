#include "mapperscope/csv.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "mapperscope/error.h"

namespace mapperscope {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Splits on commas; returns cells with their 1-based starting columns.
std::vector<std::pair<std::string_view, std::size_t>> split(std::string_view line) {
  std::vector<std::pair<std::string_view, std::size_t>> cells;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    const std::size_t end = comma == std::string_view::npos ? line.size() : comma;
    cells.emplace_back(line.substr(start, end - start), start + 1);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::string unquote(std::string_view cell) {
  cell = trim(cell);
  if (cell.size() >= 2 && cell.front() == '"' && cell.back() == '"') {
    cell = cell.substr(1, cell.size() - 2);
  }
  return std::string(cell);
}

}  // namespace

CsvTable parse_csv(std::istream& in, const std::string& source) {
  CsvTable table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<double> data;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (line_no == 1 && view.substr(0, 3) == "\xEF\xBB\xBF") view.remove_prefix(3);
    if (trim(view).empty()) continue;
    const auto cells = split(view);
    if (!have_header) {
      for (const auto& [cell, col] : cells) table.header.push_back(unquote(cell));
      have_header = true;
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw Error(ErrorCode::kParseError,
                  source + ":" + std::to_string(line_no) + ": expected " +
                      std::to_string(table.header.size()) + " cells, found " +
                      std::to_string(cells.size()),
                  {line_no, 1});
    }
    for (const auto& [raw, col] : cells) {
      const std::string_view cell = trim(raw);
      double value = 0.0;
      const char* first = cell.data();
      const char* last = cell.data() + cell.size();
      if (!cell.empty() && *first == '+') ++first;
      const auto [ptr, ec] = std::from_chars(first, last, value);
      if (cell.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
        throw Error(ErrorCode::kNonNumericCell,
                    source + ":" + std::to_string(line_no) + ":" + std::to_string(col) +
                        ": non-numeric cell '" + std::string(cell) + "'",
                    {line_no, col});
      }
      data.push_back(value);
    }
    ++rows;
  }
  if (!have_header) {
    throw Error(ErrorCode::kParseError, source + ": empty file, header row required", {1, 1});
  }
  table.values = Matrix(rows, table.header.size());
  table.values.data() = std::move(data);
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::kMissingFile, "cannot open '" + path.string() + "'");
  }
  return parse_csv(in, path.string());
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const Matrix& values) {
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c) out << ',';
    out << header[c];
  }
  out << '\n';
  char buf[64];
  for (std::size_t r = 0; r < values.rows(); ++r) {
    for (std::size_t c = 0; c < values.cols(); ++c) {
      if (c) out << ',';
      const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), values(r, c));
      out.write(buf, ptr - buf);
    }
    out << '\n';
  }
}

void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header, const Matrix& values) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kMissingFile, "cannot write '" + path.string() + "'");
  write_csv(out, header, values);
}

}  // namespace mapperscope
