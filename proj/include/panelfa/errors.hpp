#pragma once

#include <stdexcept>
#include <string>

namespace panelfa {

// Base class for all toolkit failures so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. row/col are 1-based and already embedded in what().
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int row, int col)
      : Error("parse error at row " + std::to_string(row) + ", column " +
              std::to_string(col) + ": " + msg),
        row_(row),
        col_(col) {}

  explicit ParseError(const std::string& msg, int row)
      : Error("parse error at row " + std::to_string(row) + ": " + msg),
        row_(row) {}

  int row() const { return row_; }
  int col() const { return col_; }

 private:
  int row_ = 0;
  int col_ = 0;  // 0 when the error concerns the whole row
};

// Invalid run configuration (window bounds, drop list, flag values).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace panelfa
