#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mdawg {

enum class ErrorKind {
  RejectedSymbol,
  InvalidUtf8,
  InvalidCombination,
  UnknownCode,
  AmbiguousType,
  ReservedSymbol,
  MalformedEntry,
  MalformedFeatures,
  InvalidCodingTable,
  ParseError,
  IoError,
  BadMagic,
  ChecksumMismatch,
  VersionMismatch,
  CodingTableMismatch,
  CorruptImage,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

/// All library failures are reported through this exception; `kind()` is the
/// machine-checkable part, `what()` the human-readable one.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace mdawg
