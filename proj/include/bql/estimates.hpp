#pragma once

#include <functional>
#include <vector>

#include "bql/field.hpp"

namespace bql::estimates {

/// Radial profile f(s) on [0, s_max] with a tail-integrability requirement
/// (checked against s ds by the transform).
struct RadialProfile {
  std::function<double(double)> f;
  double s_max = 0.0;
};

/// 2D radial Fourier transform at radius r:
///   f^(r) = int_0^inf f(s) J_0(rs) s ds
/// by oscillation-aware panel quadrature.  Throws DomainError when the
/// profile tail is not integrable against s ds.
double radial_hat(const RadialProfile& profile, double r, double abs_tol = 1e-11);

struct KernelOptions {
  double t_min = 1.0;     // quadrature needs t >= t_min
  int base_points = 48;   // r-grid resolution on [0, r_max]
  int ridge_points = 48;  // extra points where the stationary ridge sits
  double abs_tol = 1e-9;
};

/// |(|k|^beta e^{it phi})^v| at radius r:
///   I(r, t) = int_0^inf s^{beta+1} e^{it(s^3+s)} J_0(rs) ds,
/// head on the real axis, tail rotated into the upper half plane past every
/// stationary point (split into the two Hankel envelopes when rs is large).
double kernel_point(double r, double t, double beta, double abs_tol = 1e-9);

/// sup over an adaptive r-grid on [0, r_max] of |kernel_point|, with the
/// grid refined near the stationary ridge r ~ t.
double kernel_sup(double t, double beta, double r_max, const KernelOptions& opts = {});

struct DecayFitReport {
  double beta = 0.0;
  std::vector<double> times;
  std::vector<double> sup_values;
  double fitted_slope = 0.0;
  double slope_stderr = 0.0;

  void validate() const;
};

/// Least-squares slope of log kernel_sup(t) vs log t; the dispersive decay
/// rate predicts -(2+beta)/3.  Needs at least 4 samples.
DecayFitReport decay_fit(double beta, const std::vector<double>& t_grid,
                         const KernelOptions& opts = {});

/// Oscillatory-integral problem |f''| > 1 on [a, b].
struct VdcProblem {
  std::function<double(double)> f;     // phase
  std::function<double(double)> fp;    // f'
  std::function<double(double)> fpp;   // f''
  std::function<double(double)> psi;   // amplitude
  std::function<double(double)> dpsi;  // psi'
  double a = 0.0, b = 0.0;
};

struct VdcReport {
  std::vector<double> lambdas;
  std::vector<double> lhs;     // |int e^{i lambda f} psi|
  std::vector<double> ratios;  // lhs / (lambda^{-1/2} (|psi(b)| + ||psi'||_1))
  double max_ratio = 0.0;
};

/// For each lambda, the oscillatory integral versus the lambda^{-1/2} bound.
/// PreconditionError if |f''| <= 1 anywhere on a sample grid.
VdcReport van_der_corput_check(const VdcProblem& p,
                               const std::vector<double>& lambda_grid);

/// || D^delta U(t) w0 ||_{L^{q_delta}_T L^inf_x} / ||w0||_2 on the linear
/// grid flow, q_delta = 3/(1+delta).  Requires 0 <= delta < 1/2.
double strichartz_ratio(const Field& w0, double delta, double T, double dt);

/// cube_smoothing_norm of the linear flow / ||w0||_2.
double smoothing_ratio(const Field& w0, double T, double dt);

/// maximal_norm of the linear flow / ((1 + T^{1/4}) ||w0||_{H^s}).
/// Requires s > 3/2.
double maximal_ratio(const Field& w0, double s, double T, double dt);

/// || D^m(fg) - f D^m g - g D^m f ||_p / ( ||g||_inf ||D^m f||_p ) on the
/// grid.  m in (0,1), p in (1, inf).  Returns 0 when both sides vanish;
/// DefectError when the bound side vanishes but the commutator does not.
double frac_leibniz_defect(const Field& f, const Field& g, double m, double p);

struct HEnvelopeReport {
  int k = 0;
  std::vector<double> r;
  std::vector<double> magnitude;  // |d^k h / dr^k|
  double fitted_exponent = 0.0;
  bool positive_smooth = false;
};

/// Envelope decay of h(r) = e^{-ir} H0^(1)(r): |d^k h| ~ (1+r)^{-1/2-k}.
/// Derivatives for k = 1, 2 by finite differences.  r_grid must start >= 1.
HEnvelopeReport h_envelope_check(int k, const std::vector<double>& r_grid);

/// Least-squares fit of log y = a + slope * log x; returns (slope, stderr).
std::pair<double, double> fit_loglog(const std::vector<double>& x,
                                     const std::vector<double>& y);

}  // namespace bql::estimates
