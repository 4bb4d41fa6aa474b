#pragma once

#include <stdexcept>
#include <string>

namespace cdp {

/// Base class for all domain errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed document text. Carries the 1-based line/column of the defect.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error("parse error at " + std::to_string(line) + ":" +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// A value violates a model invariant. Carries the path of the offending
/// field, e.g. "nodes[2].methods[0].options[1].perf".
class ValidationError : public Error {
 public:
  ValidationError(const std::string& field_path, const std::string& message)
      : Error(field_path + ": " + message),
        field_path_(field_path),
        message_(message) {}

  const std::string& field_path() const noexcept { return field_path_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string field_path_;
  std::string message_;
};

/// The time constraint cannot accommodate the node chain (T < node count).
class InfeasibleTime : public Error {
 public:
  using Error::Error;
};

/// The brute-force enumeration would exceed the oracle's work guard.
class TooLarge : public Error {
 public:
  using Error::Error;
};

/// A scenario handed to the simulator is not internally consistent.
class InvalidScenario : public Error {
 public:
  using Error::Error;
};

/// Filesystem-level failure while reading or writing a document.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cdp
