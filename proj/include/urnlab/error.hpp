#pragma once

#include <stdexcept>
#include <string>

namespace urnlab {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument or range: a caller-side validation failure.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Two scalars of different modes met in one expression.
class ModeMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

// A custom weight table was queried past its declared range.
class OutOfRange : public DomainError {
 public:
  using DomainError::DomainError;
};

// A closed form needs pairwise distinct weights and did not get them.
class DistinctnessViolation : public DomainError {
 public:
  using DomainError::DomainError;
};

// Path enumeration refused: the instance would blow up exponentially.
class InstanceTooLarge : public DomainError {
 public:
  using DomainError::DomainError;
};

// No closed form exists for the request; use the recurrence oracle.
class ClosedFormUnavailable : public DomainError {
 public:
  using DomainError::DomainError;
};

// Outcome space of an empirical sample does not match the reference law.
class SupportMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

// A linear system that must be consistent was not. Indicates a formula or
// implementation error, never a user error.
class InconsistentSystem : public Error {
 public:
  using Error::Error;
};

}  // namespace urnlab
