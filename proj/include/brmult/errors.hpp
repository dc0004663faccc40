#pragma once

#include <stdexcept>
#include <string>

namespace brm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite-colength certificate could not be produced within the exponent
/// bound. Either the bound is too small or the colength is infinite.
class NotFiniteColength : public Error {
 public:
  NotFiniteColength(const std::string& what, int bound)
      : Error(what + " (no certificate up to s_max = " + std::to_string(bound) + ")"), bound_(bound) {}
  int bound() const { return bound_; }

 private:
  int bound_;
};

class WindowTooSmall : public Error {
 public:
  using Error::Error;
};

class GeneratorOverflow : public Error {
 public:
  GeneratorOverflow(std::size_t count, std::size_t cap)
      : Error("generator count " + std::to_string(count) + " exceeds cap " + std::to_string(cap)),
        count_(count) {}
  std::size_t count() const { return count_; }

 private:
  std::size_t count_;
};

class CandidateNotJointReduction : public Error {
 public:
  using Error::Error;
};

class NotLocal : public Error {
 public:
  using Error::Error;
};

class VariableMismatch : public Error {
 public:
  using Error::Error;
};

/// Syntax or semantic error in textual input; line and column are 1-based
/// (line 0 when the input was a single expression).
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error(format(line, column, message)), line_(line), column_(column), message_(message) {}
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  static std::string format(int line, int column, const std::string& message) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ", ";
    out += "column " + std::to_string(column) + ": " + message;
    return out;
  }
  int line_;
  int column_;
  std::string message_;
};

}  // namespace brm
