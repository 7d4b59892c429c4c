#pragma once

#include <stdexcept>
#include <string>

namespace cubenorm {

/// A dense operation was asked to materialize more than 2^cap entries.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// E f^4 / (E f^2)^2 requested for the zero function.
class UndefinedRatioError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Two computation paths that must agree exactly did not.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace cubenorm
