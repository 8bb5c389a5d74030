#pragma once

#include <complex>
#include <functional>

#include "bql/errors.hpp"

namespace bql::quad {

using cplx = std::complex<double>;

struct Result {
  cplx value{};
  double abs_err = 0.0;
  long evals = 0;
};

/// 15-point Gauss-Kronrod rule on [a, b]; abs_err is |K15 - G7|.
Result gk15(const std::function<cplx(double)>& f, double a, double b);

/// Globally adaptive bisection built on gk15.  Recursion depth is bounded
/// (max_depth, default 30); NumericalError if the tolerance cannot be met.
Result adaptive(const std::function<cplx(double)>& f, double a, double b,
                double abs_tol, int max_depth = 30);

/// Marching panel quadrature for oscillatory integrands on [a, b]: panel
/// lengths track the local phase rate (radians per unit length) so each
/// panel sees at most ~pi of phase; panels failing the local tolerance are
/// bisected adaptively.
Result oscillatory(const std::function<cplx(double)>& f, double a, double b,
                   const std::function<double(double)>& phase_rate,
                   double abs_tol);

/// Integral of g along the ray z(rho) = z0 + e^{i theta} rho, rho in
/// [0, infinity), for integrands decaying along the ray.  Marches panels
/// sized by the local oscillation rate and stops when the running tail
/// estimate drops below abs_tol.  rho_cap bounds the march (NumericalError
/// with diagnostics if no convergence by then).
Result ray(const std::function<cplx(cplx)>& g, cplx z0, double theta,
           const std::function<double(double)>& phase_rate, double abs_tol,
           double rho_cap);

}  // namespace bql::quad
