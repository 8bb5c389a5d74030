#include "bql/quad.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bql::quad {

namespace {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.02293532201052922, 0.06309209262997855, 0.10479001032225018,
    0.14065325971552592, 0.16900472663926790, 0.19035057806478540,
    0.20443294007529889, 0.20948214108472783};
constexpr double kWg[4] = {0.12948496616886969, 0.27970539148927665,
                           0.38183005050511894, 0.41795918367346939};

}  // namespace

Result gk15(const std::function<cplx(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  cplx kr = kWgk[7] * f(c);
  cplx gs = kWg[3] * f(c);
  for (int i = 0; i < 7; ++i) {
    const cplx lo = f(c - h * kXgk[i]);
    const cplx hi = f(c + h * kXgk[i]);
    kr += kWgk[i] * (lo + hi);
    if (i % 2 == 1) gs += kWg[i / 2] * (lo + hi);
  }
  Result r;
  r.value = kr * h;
  r.abs_err = std::abs((kr - gs) * h);
  r.evals = 15;
  return r;
}

namespace {

Result adaptive_rec(const std::function<cplx(double)>& f, double a, double b,
                    double abs_tol, int depth, int max_depth) {
  Result r = gk15(f, a, b);
  if (r.abs_err <= abs_tol || depth >= max_depth) {
    if (r.abs_err > abs_tol && depth >= max_depth)
      throw NumericalError("quad::adaptive: tolerance not met at max recursion depth");
    return r;
  }
  // Children cannot resolve below the roundoff of their own panel value.
  const double child_tol =
      std::max(0.5 * abs_tol, 1e-15 * std::abs(r.value) + 1e-300);
  const double c = 0.5 * (a + b);
  Result left = adaptive_rec(f, a, c, child_tol, depth + 1, max_depth);
  Result right = adaptive_rec(f, c, b, child_tol, depth + 1, max_depth);
  left.value += right.value;
  left.abs_err += right.abs_err;
  left.evals += right.evals + r.evals;
  return left;
}

}  // namespace

Result adaptive(const std::function<cplx(double)>& f, double a, double b,
                double abs_tol, int max_depth) {
  if (a == b) return {};
  if (a > b) {
    Result r = adaptive(f, b, a, abs_tol, max_depth);
    r.value = -r.value;
    return r;
  }
  return adaptive_rec(f, a, b, abs_tol, 0, max_depth);
}

Result oscillatory(const std::function<cplx(double)>& f, double a, double b,
                   const std::function<double(double)>& phase_rate,
                   double abs_tol) {
  if (a == b) return {};
  Result total;
  double x = a;
  const double span = b - a;
  // Local tolerance scaled by the panel fraction of the interval.
  while (x < b) {
    // Panel length from the worst phase rate across the candidate panel
    // (rates can vary a lot within one panel, e.g. vanish at one edge).
    double len = std::min(span / 4.0, b - x);
    for (int pass = 0; pass < 2; ++pass) {
      const double rate =
          std::max({phase_rate(x), phase_rate(x + 0.5 * len), phase_rate(x + len),
                    1e-12});
      len = std::min({std::numbers::pi / rate, span / 4.0, b - x});
    }
    const double local_tol = abs_tol * std::max(len / span, 1e-3);
    Result panel = adaptive(f, x, x + len, local_tol, 30);
    total.value += panel.value;
    total.abs_err += panel.abs_err;
    total.evals += panel.evals;
    x += len;
  }
  return total;
}

Result ray(const std::function<cplx(cplx)>& g, cplx z0, double theta,
           const std::function<double(double)>& phase_rate, double abs_tol,
           double rho_cap) {
  const cplx dir(std::cos(theta), std::sin(theta));
  auto along = [&](double rho) { return g(z0 + dir * rho) * dir; };
  Result total;
  double rho = 0.0;
  int quiet_panels = 0;
  double last_panel = 0.0;
  while (rho < rho_cap) {
    const double rate = std::max(phase_rate(rho), 1e-12);
    // At least 8 panels across the march so the quiet-tail exit can engage.
    const double len =
        std::min({std::numbers::pi / rate, rho_cap - rho, rho_cap / 8.0});
    Result panel = adaptive(along, rho, rho + len, abs_tol * 1e-2, 30);
    total.value += panel.value;
    total.abs_err += panel.abs_err;
    total.evals += panel.evals;
    rho += len;
    last_panel = std::abs(panel.value);
    if (last_panel < 0.25 * abs_tol) {
      if (++quiet_panels >= 3) return total;
    } else {
      quiet_panels = 0;
    }
  }
  // Reached the cap: fine if the integrand has already died out there.
  if (last_panel <= abs_tol) return total;
  throw NumericalError("quad::ray: tail did not converge before rho_cap");
}

}  // namespace bql::quad
