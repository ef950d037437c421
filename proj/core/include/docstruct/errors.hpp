#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace docstruct {

// Base for every error raised by the library. The CLI maps ContractError and
// UsageError to exit code 2 and everything else to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (XML, CSV, JSON). Carries a 1-based line and, when
// known, a byte offset within that line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t offset = 0);

  std::size_t line() const noexcept { return line_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t line_;
  std::size_t offset_;
};

// Well-formed input with a missing or invalid field.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// A caller violated an operation's precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Serialized artifact with an unknown or future format version.
class VersionError : public Error {
 public:
  using Error::Error;
};

// Input data that cannot be used for the requested operation
// (e.g. single-class training set, NaN features).
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace docstruct
