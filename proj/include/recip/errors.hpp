#pragma once

#include <stdexcept>
#include <string>

namespace recip {

/// Base of every library error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside an operation's domain (non-hyperbolic input, p == q, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A group description or data file failed validation; `field` names the culprit.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// An enumeration hit its point or time budget; results would be incomplete.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Not enough samples to fit a growth rate.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

}  // namespace recip
