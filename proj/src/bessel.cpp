#include "bql/bessel.hpp"

#include <cmath>
#include <numbers>

#include "bql/quad.hpp"

namespace bql::bessel {

namespace {
constexpr double kPi = std::numbers::pi;
}

double bessel_j(double m, double r, double abs_tol) {
  if (!(m > -0.5)) throw DomainError("bessel_j: requires m > -1/2");
  if (r < 0.0) throw DomainError("bessel_j: requires r >= 0");
  if (r == 0.0) return m == 0.0 ? 1.0 : 0.0;
  // s = sin(theta):  int_{-pi/2}^{pi/2} e^{i r sin(theta)} cos(theta)^{2m} dtheta.
  // The imaginary part vanishes by symmetry; integrate the even real part.
  auto integrand = [r, m](double th) -> quad::cplx {
    return std::cos(r * std::sin(th)) * std::pow(std::cos(th), 2.0 * m);
  };
  auto rate = [r](double th) { return r * std::abs(std::cos(th)) + 1.0; };
  quad::Result q = quad::oscillatory(integrand, -0.5 * kPi, 0.5 * kPi, rate, abs_tol);
  const double prefactor =
      std::pow(0.5 * r, m) / (std::tgamma(m + 0.5) * std::sqrt(kPi));
  return prefactor * q.value.real();
}

double y0_quadrature(double x, double abs_tol) {
  if (!(x > 0.0)) throw DomainError("y0_quadrature: requires x > 0");
  // Y0(x) = -(2/pi) int_1^inf cos(xt)/sqrt(t^2-1) dt.  Substituting
  // t = 1 + u^2 gives -(4/pi) int_0^inf cos(x(1+u^2))/sqrt(2+u^2) du, and the
  // e^{+ix u^2} half rotates to the +pi/4 ray (Gaussian decay e^{-x rho^2});
  // the other half is its conjugate.
  const cplx dir = std::polar(1.0, 0.25 * kPi);
  auto g = [x](cplx u) -> cplx {
    return std::exp(cplx(0.0, x) * u * u) / std::sqrt(2.0 + u * u);
  };
  const double rho_cap = std::sqrt(60.0 / x) + 2.0;
  auto rate = [x](double rho) { return 2.0 * x * rho + 1.0; };
  quad::Result q = quad::ray(g, cplx(0.0, 0.0), 0.25 * kPi, rate, abs_tol, rho_cap);
  (void)dir;
  const cplx half = std::exp(cplx(0.0, x)) * q.value;
  return -(4.0 / kPi) * half.real();
}

namespace {

// A_k of the Hankel asymptotics for nu = 0: A_0 = 1,
// A_k = -A_{k-1} (2k-1)^2 / (8k).
cplx hankel_series(cplx z, double conj_sign) {
  cplx sum = 1.0;
  cplx term = 1.0;
  const cplx iz = cplx(0.0, conj_sign) / z;
  double prev_mag = 1.0;
  for (int k = 1; k <= 22; ++k) {
    const double a = -((2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k);
    term *= a * iz;
    const double mag = std::abs(term);
    if (mag > prev_mag) break;  // asymptotic series: stop at smallest term
    sum += term;
    prev_mag = mag;
  }
  return sum;
}

cplx j0_series(cplx z) {
  const cplx q = -0.25 * z * z;
  cplx sum = 1.0;
  cplx term = 1.0;
  for (int k = 1; k <= 60; ++k) {
    term *= q / double(k) / double(k);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum) && k > 4) break;
  }
  return sum;
}

}  // namespace

double j0_fast(double x) {
  x = std::abs(x);
  if (x < 14.0) return j0_series(cplx(x, 0.0)).real();
  const cplx env = hankel1_envelope(cplx(x, 0.0));
  return (env * std::exp(cplx(0.0, x))).real();
}

cplx hankel1_envelope(cplx z) {
  const cplx amp = std::sqrt(2.0 / (kPi * z)) * std::polar(1.0, -0.25 * kPi);
  return amp * hankel_series(z, +1.0);
}

cplx hankel2_envelope(cplx z) {
  const cplx amp = std::sqrt(2.0 / (kPi * z)) * std::polar(1.0, +0.25 * kPi);
  return amp * hankel_series(z, -1.0);
}

cplx j0_complex(cplx z) {
  if (std::abs(z) <= 22.0) return j0_series(z);
  const cplx e_plus = std::exp(cplx(0.0, 1.0) * z);
  const cplx e_minus = std::exp(cplx(0.0, -1.0) * z);
  return 0.5 * (hankel1_envelope(z) * e_plus + hankel2_envelope(z) * e_minus);
}

cplx h_function(double r) {
  const double j0 = bessel_j(0.0, r);
  const double y0 = y0_quadrature(r);
  return std::exp(cplx(0.0, -r)) * cplx(j0, y0);
}

}  // namespace bql::bessel
