#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mapperscope/types.h"

namespace mapperscope {

// Numeric CSV: a mandatory header row, then comma-separated numbers with '.'
// as the decimal point. Header cells may be double-quoted; numbers are not.
struct CsvTable {
  std::vector<std::string> header;
  Matrix values;
};

// `source` names the input in error messages. Errors: kParseError (ragged
// rows, empty input) and kNonNumericCell, both with a 1-based line/column.
CsvTable parse_csv(std::istream& in, const std::string& source);

// Throws Error(kMissingFile) when the file cannot be opened.
CsvTable read_csv(const std::filesystem::path& path);

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const Matrix& values);
void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header, const Matrix& values);

}  // namespace mapperscope
