#pragma once

#include <stdexcept>
#include <string>

namespace minaber {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A factor was declared with fewer than two levels, or a space with no factors.
class InvalidLevelCount : public Error {
 public:
  using Error::Error;
};

// Mismatched dimensions: wrong vector length, incompatible design spaces,
// a transform that does not fit the space, or incomparable patterns.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Input data violates a domain constraint (e.g. a run coordinate out of
// its level range, or a malformed multi-index).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Design-file syntax error; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line)
      : Error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Projection onto an empty or invalid factor subset.
class InvalidProjection : public Error {
 public:
  using Error::Error;
};

// Operation requires at least one run.
class EmptyDesignError : public Error {
 public:
  using Error::Error;
};

// A coefficient table does not evaluate to nonnegative integer counts.
class InconsistentCoefficients : public Error {
 public:
  using Error::Error;
};

// Requested projection size is out of range for the parent array.
class InvalidSizeError : public Error {
 public:
  using Error::Error;
};

}  // namespace minaber
