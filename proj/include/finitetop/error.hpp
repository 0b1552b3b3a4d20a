#pragma once

#include <stdexcept>
#include <string>

namespace finitetop {

/// Input violates an operation's domain (unknown id, malformed set, bad parameter).
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition of the operation does not hold (e.g. non-T0 input).
class PreconditionError : public DomainError {
public:
  using DomainError::DomainError;
};

/// A size guard rejected the request before any heavy work started.
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace finitetop
