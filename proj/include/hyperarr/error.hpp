#pragma once

#include <stdexcept>
#include <string>

namespace hyperarr {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed user input: expressions, arrangement files, arrangement specs.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Arguments that violate an operation's precondition (mismatched fields,
/// out-of-range indices, division by zero, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A computation that is well-formed but refused, e.g. exponents of a
/// non-supersolvable arrangement.
class RefusalError : public Error {
 public:
  using Error::Error;
};

/// A lattice build exceeded the configured flat budget.
class LimitError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace hyperarr
