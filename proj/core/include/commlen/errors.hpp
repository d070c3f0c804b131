#pragma once

#include <stdexcept>
#include <string>

namespace commlen {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke an operation's documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Singular matrix or singular linear system.
class SingularError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Inversion of a nonzero element failed: the algebra parameters do not give
// a division algebra.
class NotDivisionAlgebra : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// A certificate or reassembly failed exact verification.
class VerificationError : public Error {
 public:
  using Error::Error;
};

// An internal invariant was violated. Always a bug, never bad input.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace commlen
