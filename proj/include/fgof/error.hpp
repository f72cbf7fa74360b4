#pragma once

#include <stdexcept>
#include <string>

namespace fgof {

/// Base class for every error raised by the library. `exit_code()` maps the
/// error onto the CLI exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 4; }
};

/// Bad argument or configuration (exit code 4).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// Grid functions or matrices with incompatible sizes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Input file could not be parsed (exit code 2).
class IngestionError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 2; }
};

/// Linear algebra or quadrature failure (exit code 3).
class NumericalError : public Error {
 public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
};

/// Residual scale estimate is zero, so scaled statistics are undefined.
class DegenerateScaleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A diagnostic needs data that is not available (e.g. true errors).
class UnsupportedDiagnosticError : public Error {
 public:
  using Error::Error;
};

}  // namespace fgof
