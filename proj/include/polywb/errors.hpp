#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace polywb {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed user input: bad syntax, unknown names, inconsistent files.
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : InputError(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
        message_(what),
        line_(line),
        column_(column) {}

  const std::string& message() const { return message_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

class CompositionError : public InputError {
 public:
  using InputError::InputError;
};

// A step whose context does not fit the diagram it is applied to.
class ApplicationError : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace polywb
