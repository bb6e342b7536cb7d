#pragma once

#include <stdexcept>
#include <string>

namespace holoscope {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ModulusError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

// A closure, search or enumeration ran past its configured bound.
class BoundExceeded : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Caller handed in something outside an operation's domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed. Always a bug or bad data.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

inline void ensure(bool ok, const std::string& what) {
  if (!ok) throw InvariantViolation(what);
}

}  // namespace holoscope
