#pragma once

#include <stdexcept>
#include <string>

namespace cbs {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class InvalidExponent : public Error {
 public:
  using Error::Error;
};

class NotOrthogonalFamily : public Error {
 public:
  using Error::Error;
};

class ZeroVector : public Error {
 public:
  using Error::Error;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

/// A NaN or infinity reached a public entry point.
class NonFinite : public Error {
 public:
  using Error::Error;
};

/// Power iteration ran out of iterations; carries the best estimate seen.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, double estimate, double residual, int iterations)
      : Error(what), estimate_(estimate), residual_(residual), iterations_(iterations) {}

  double estimate() const noexcept { return estimate_; }
  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double estimate_;
  double residual_;
  int iterations_;
};

// Input-file errors.
class ParseError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

class ValueError : public Error {
 public:
  using Error::Error;
};

}  // namespace cbs
