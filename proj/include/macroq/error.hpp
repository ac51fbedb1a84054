#pragma once

#include <stdexcept>
#include <string>

namespace macroq {

/// Base class for every failure raised by the library. `kind()` is a short
/// machine-readable tag used by the CLI when it reports structured errors.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

struct InvalidArgument : Error {
  explicit InvalidArgument(const std::string& w) : Error("invalid-argument", w) {}
};

struct DimensionError : Error {
  explicit DimensionError(const std::string& w) : Error("dimension", w) {}
};

/// The Fock cutoff is too small for the requested state or operation.
struct TruncationError : Error {
  explicit TruncationError(const std::string& w) : Error("truncation", w) {}
};

/// Adaptive integration did not reach the requested tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& w, double partial, double err)
      : Error("convergence", w), partial_(partial), err_(err) {}
  double partial_estimate() const noexcept { return partial_; }
  double error_estimate() const noexcept { return err_; }

 private:
  double partial_;
  double err_;
};

struct FormatError : Error {
  explicit FormatError(const std::string& w) : Error("format", w) {}
};

/// A file could not be opened, read or written.
struct IoError : Error {
  explicit IoError(const std::string& w) : Error("io", w) {}
};

struct NormalizationError : Error {
  explicit NormalizationError(const std::string& w) : Error("normalization", w) {}
};

/// A phase-space grid does not cover the state (mass at the boundary).
struct CoverageError : Error {
  explicit CoverageError(const std::string& w) : Error("coverage", w) {}
};

/// The integrator produced a state outside the positivity tolerance.
struct StepSizeError : Error {
  explicit StepSizeError(const std::string& w) : Error("step-size", w) {}
};

}  // namespace macroq
