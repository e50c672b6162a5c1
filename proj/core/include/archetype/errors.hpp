#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace archetype {

// Base of all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (CSV, JSON, mismatched files).
struct FormatError : Error {
  using Error::Error;
};

// A computation cannot proceed with the given dimensions or values.
struct NumericError : Error {
  using Error::Error;
};

// File could not be read or written.
struct IoError : Error {
  using Error::Error;
};

struct MissingColumn : FormatError {
  explicit MissingColumn(const std::string& column)
      : FormatError("missing required column: " + column), column(column) {}
  std::string column;
};

// Carries the 1-based line number of the offending CSV row.
struct BadValue : FormatError {
  BadValue(const std::string& what, std::size_t line)
      : FormatError("line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};

struct EmptyInput : FormatError {
  using FormatError::FormatError;
};

struct LabelMismatch : FormatError {
  using FormatError::FormatError;
};

struct BadDimensions : NumericError {
  using NumericError::NumericError;
};

struct ShapeError : NumericError {
  using NumericError::NumericError;
};

struct EmptyMatrix : NumericError {
  using NumericError::NumericError;
};

struct RankTooLarge : NumericError {
  using NumericError::NumericError;
};

struct TooManyComponents : NumericError {
  using NumericError::NumericError;
};

struct BadComponent : NumericError {
  using NumericError::NumericError;
};

struct InvalidConfig : NumericError {
  using NumericError::NumericError;
};

}  // namespace archetype
