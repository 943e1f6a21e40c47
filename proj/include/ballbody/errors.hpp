#pragma once

#include <stdexcept>
#include <string>

namespace ballbody {

// Root of every error the toolkit throws. The CLI maps subclasses onto exit
// codes: ConvergenceError -> 3, everything else -> 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A non-finite value showed up where a real number was required.
class NumericalDomainError : public Error {
 public:
  using Error::Error;
};

class EmptyBodyError : public Error {
 public:
  using Error::Error;
};

// The body is a valid input in general but excluded for this operation
// (points, translates of the unit ball, unsupported dimension).
class UnsupportedBodyError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

// Two independent evaluation routes disagreed beyond their stated tolerance.
class SelfCheckError : public Error {
 public:
  using Error::Error;
};

}  // namespace ballbody
