#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mapperscope {

enum class ErrorCode {
  kInvalidArgument,
  kMissingFile,
  kParseError,
  kShapeMismatch,
  kNonNumericCell,
  kVersionMismatch,
  kCorruptArtifact,
  kEmptyLens,
  kSyntaxError,
  kUnknownColumn,
  kUnknownMethod,
};

std::string_view error_code_name(ErrorCode code);

// Position of a fault inside a text input. Lines and columns are 1-based;
// zero means "not applicable".
struct SourceLocation {
  std::size_t line = 0;
  std::size_t column = 0;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, SourceLocation where = {})
      : std::runtime_error(message), code_(code), where_(where) {}

  ErrorCode code() const { return code_; }
  const SourceLocation& where() const { return where_; }

 private:
  ErrorCode code_;
  SourceLocation where_;
};

// Raised by the filter-query parser. `position` is a 0-based character
// offset into the query text.
class QuerySyntaxError : public Error {
 public:
  QuerySyntaxError(std::size_t position, std::string expected,
                   const std::string& message)
      : Error(ErrorCode::kSyntaxError, message, {1, position + 1}),
        position_(position),
        expected_(std::move(expected)) {}

  std::size_t position() const { return position_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

}  // namespace mapperscope
