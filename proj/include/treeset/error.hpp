#pragma once

#include <stdexcept>
#include <string>

namespace treeset {

// Base for every error raised by the library. Mathematical verdicts are never
// reported through exceptions; only malformed input and violated
// preconditions are.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text, unknown symbol, empty source.
class InputError : public Error {
 public:
  using Error::Error;
};

// A query needs information beyond the stored horizon of a truncated set.
class HorizonError : public Error {
 public:
  using Error::Error;
};

class NotAFactorError : public Error {
 public:
  using Error::Error;
};

// A set of words does not have the code role an operation requires
// (prefix, suffix, bifix).
class RoleError : public Error {
 public:
  using Error::Error;
};

class ContainmentError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NonExpandingError : public Error {
 public:
  using Error::Error;
};

}  // namespace treeset
