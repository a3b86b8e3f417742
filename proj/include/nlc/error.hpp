#pragma once

#include <stdexcept>
#include <string>

namespace nlc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An index fell outside the grid.
class BoundsError : public Error {
 public:
  using Error::Error;
};

/// A numeric parameter violates a documented precondition.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Incompatible objects were combined (grid/stencil mismatch, bad separation...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A sweep would violate the CFL bound; the caller must shrink the step.
class StepRejected : public Error {
 public:
  StepRejected(const std::string& what, double courant)
      : Error(what), courant_(courant) {}
  double courant() const noexcept { return courant_; }

 private:
  double courant_;
};

/// A field picked up NaN or Inf.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

/// Malformed structured text, with the offending line (1-based, 0 if unknown).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Failure reading or writing a file.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace nlc
