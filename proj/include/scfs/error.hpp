#pragma once

#include <stdexcept>
#include <string>

namespace scfs {

// Base of every error raised by the library. Each subclass maps to one
// failure family so callers (the CLI in particular) can dispatch on type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes or counts out of range (k > n, mismatched lengths, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Iterative solver failed to converge within its cap.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// A label vector does not induce the required partition (empty group).
class PartitionError : public Error {
 public:
  using Error::Error;
};

// Threshold selection produced an empty feature set.
class SelectionEmptyError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Synthetic data generation gave up (e.g. rejection cap exceeded).
class GenerationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed text input; carries the 1-based row and column when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, long row = 0, long col = 0)
      : Error(what), row_(row), col_(col) {}
  long row() const { return row_; }
  long col() const { return col_; }

 private:
  long row_;
  long col_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace scfs
