#pragma once

#include <stdexcept>
#include <string>

namespace bql {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Structural misuse: mismatched grids, wrong representation, bad shapes.
struct StructuralError : Error {
  using Error::Error;
};

/// A parameter outside its mathematical domain (s < 0, delta >= 1/2, ...).
struct DomainError : Error {
  using Error::Error;
};

/// A caller-visible precondition failed (non-mean-zero input, too few slices).
struct PreconditionError : Error {
  using Error::Error;
};

/// Data violates an invariant the operation relies on; carries the residual.
struct DefectError : Error {
  double residual;
  DefectError(const std::string& what, double res) : Error(what), residual(res) {}
};

/// Numerical failure: blow-up, non-convergence, quadrature breakdown.
struct NumericalError : Error {
  using Error::Error;
};

/// Snapshot / CSV format problems.
struct FormatError : Error {
  using Error::Error;
};

/// Run-configuration problems (CLI exit code 2).
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace bql
