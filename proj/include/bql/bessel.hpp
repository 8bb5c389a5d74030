#pragma once

#include <complex>
#include <functional>

#include "bql/errors.hpp"

namespace bql::bessel {

using cplx = std::complex<double>;

/// J_m(r) from the Poisson integral representation
///   J_m(r) = (r/2)^m / (Gamma(m+1/2) sqrt(pi)) * int_{-1}^{1} e^{irs} (1-s^2)^{m-1/2} ds
/// evaluated by oscillation-aware adaptive quadrature (substitution
/// s = sin(theta)).  Requires m > -1/2 (DomainError otherwise).
double bessel_j(double m, double r, double abs_tol = 1e-11);

/// Y_0(x) from the Watson integral Y_0(x) = -(2/pi) int_1^inf cos(xt)/sqrt(t^2-1) dt,
/// computed with the same quadrature engine on rotated contours.  x > 0.
double y0_quadrature(double x, double abs_tol = 1e-12);

/// Fast pointwise J_0 for quadrature integrands (delegates to the C++17
/// special function).
double j0_fast(double x);

/// J_0 at complex argument: power series for |z| <= 22, Hankel asymptotics
/// beyond.  Accuracy degrades to ~1e-8 near the series/asymptotic border,
/// which the oscillatory-kernel quadrature tolerates.
cplx j0_complex(cplx z);

/// Slowly varying Hankel envelopes: H0^(1)(z) = hankel1_envelope(z) e^{+iz},
/// H0^(2)(z) = hankel2_envelope(z) e^{-iz}; asymptotic series, |z| >= ~10.
cplx hankel1_envelope(cplx z);
cplx hankel2_envelope(cplx z);

/// h(r) = e^{-ir} H0^(1)(r) built from the quadrature J_0 and Y_0, so that
/// J_0(r) = Re(e^{ir} h(r)) with |d^k h| ~ (1+r)^{-1/2-k}.
cplx h_function(double r);

}  // namespace bql::bessel
