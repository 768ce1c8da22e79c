#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rascal {

// Base for every error raised by the library. The CLI maps any Error to
// exit status 2; usage problems are handled before the library is entered.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data (CSV, UCI files, schema files).
class DataError : public Error {
 public:
  using Error::Error;
};

// Rule text that parses but cannot be bound or processed.
class RuleError : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public RuleError {
 public:
  SyntaxError(const std::string& what, std::size_t line, std::size_t column)
      : RuleError(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// DNF expansion would produce more operational rules than allowed.
class BlowupError : public RuleError {
 public:
  using RuleError::RuleError;
};

// Instance or rule does not belong to the schema it is used with.
class SchemaMismatch : public Error {
 public:
  using Error::Error;
};

// A numeric argument outside its documented domain.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Wraps an upstream error with the name of the pipeline stage that raised it.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& what)
      : Error(stage + ": " + what), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace rascal
