#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fca {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A set, row or column does not have the width its context expects.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An object or attribute label is already taken.
class NameCollisionError : public Error {
 public:
  using Error::Error;
};

/// An object or attribute label is unknown.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// A configured size limit would be exceeded (concept cap, exponent range).
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A numeric or structural argument is outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A generalization scheme is not a partition of the attribute set.
class SchemeError : public Error {
 public:
  using Error::Error;
};

/// A caller-side precondition was violated.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Two values from different contexts were combined.
class ContextMismatchError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check between two computation routes failed.
class VerificationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace fca
