#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace flp {

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `position` is the 0-based character offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Operands whose degree, arity, dimension or index range do not fit together.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Structural input (scenario or Nambu file) that violates its schema.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& path, const std::string& message)
      : Error(path + ": " + message), path_(path) {}

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// A construction whose mathematical precondition does not hold
/// (unsatisfied splitting relation, no polynomial eigenvalue, non-tensorial defect).
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// A command asked for data the scenario does not carry (for example a
/// connection-based check on a bracket-only scenario).
class DataError : public Error {
 public:
  using Error::Error;
};

}  // namespace flp
