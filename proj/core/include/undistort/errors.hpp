#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace undistort {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller-side contract was violated (wrong space, point not fixed, ...).
// The CLI maps this family to exit code 2.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A cocycle disagrees with the class pairing on a basis loop.
class ClassMismatchError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// A coordinate or path left the coordinate domain of its space.
class DomainError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class SpaceMismatchError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// The requested operation needs an exact (or invertible) representation.
class UnsupportedFlavorError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Scenario text could not be parsed. Carries the offending line and key.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::string key = {})
      : Error(format(message, line, key)), line_(line), key_(std::move(key)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

 private:
  static std::string format(const std::string& message, std::size_t line,
                            const std::string& key) {
    std::string out = "line " + std::to_string(line);
    if (!key.empty()) out += ", key '" + key + "'";
    return out + ": " + message;
  }

  std::size_t line_;
  std::string key_;
};

}  // namespace undistort
