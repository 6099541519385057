#pragma once

#include <stdexcept>
#include <string>

namespace rikuna {

/// Base of every error raised by the library. The C API maps each subclass
/// onto a distinct status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument is malformed: composite modulus, out-of-range index, ...
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The input lies outside the operation's domain (zero polynomial, fixed
/// point handed to the beta map, non-squarefree input to index_p, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition on the field or modulus does not hold,
/// typically q != 1 (mod l).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace rikuna
