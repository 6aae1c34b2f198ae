#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace nirlw {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two grid functions with different domain descriptors were combined.
class DomainMismatch : public Error {
 public:
  using Error::Error;
};

/// A NaN or infinity showed up where a finite value is required.
class NonFiniteValue : public Error {
 public:
  using Error::Error;
};

/// Invalid solver or experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An iteration budget ran out before its stopping criterion was met.
class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

/// The discrete elliptic operator A(c) could not be factorized.
class OperatorNotInvertible : public Error {
 public:
  explicit OperatorNotInvertible(const std::string& what, std::optional<int> iterate = std::nullopt)
      : Error(iterate ? what + " (outer iterate " + std::to_string(*iterate) + ")" : what),
        iterate_(iterate) {}

  std::optional<int> iterate() const { return iterate_; }

 private:
  std::optional<int> iterate_;
};

}  // namespace nirlw
