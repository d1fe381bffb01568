#pragma once

#include <stdexcept>
#include <string>

namespace nucc {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries a 1-based line number when one is known.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, long line = -1)
      : Error(line >= 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  long line() const { return line_; }

 private:
  long line_;
};

/// Violated precondition or type invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An exactly unreachable measurement branch was post-selected.
class ZeroProbabilityError : public Error {
 public:
  ZeroProbabilityError(const std::string& what, std::string label)
      : Error(what), label_(std::move(label)) {}

  /// Label of the offending measurement (empty if unlabeled).
  const std::string& label() const { return label_; }

 private:
  std::string label_;
};

/// Iterative eigensolver did not reach its residual tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace nucc
