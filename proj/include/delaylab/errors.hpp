#pragma once

#include <stdexcept>
#include <string>

namespace delaylab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A required input is missing, non-finite or out of range. `field()` names it.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// The trajectory left the divergence guard ball.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// A closed-form quantity does not exist for the given parameters
/// (e.g. the absorbing radius when sigma*e^{mu*tau} >= mu).
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class UnimplementedError : public Error {
 public:
  using Error::Error;
};

class GridMismatchError : public Error {
 public:
  GridMismatchError() : Error("fields live on different grids") {}
};

}  // namespace delaylab
