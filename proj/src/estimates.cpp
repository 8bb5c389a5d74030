#include "bql/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "bql/bessel.hpp"
#include "bql/norms.hpp"
#include "bql/quad.hpp"
#include "bql/symbol.hpp"

namespace bql::estimates {

namespace {
constexpr double kPi = std::numbers::pi;
using quad::cplx;
}  // namespace

double radial_hat(const RadialProfile& profile, double r, double abs_tol) {
  if (!(profile.s_max > 0.0))
    throw DomainError("radial_hat: profile domain must be positive");
  // Integrability of |f| s ds: the last tenth of the domain must carry a
  // negligible share.
  auto mass = [&](double a, double b) {
    return quad::adaptive(
               [&](double s) -> cplx { return std::abs(profile.f(s)) * s; }, a, b,
               1e-12)
        .value.real();
  };
  const double total_mass = mass(0.0, profile.s_max);
  const double tail_mass = mass(0.9 * profile.s_max, profile.s_max);
  if (tail_mass > 1e-10 * total_mass && tail_mass > 1e-14)
    throw DomainError("radial_hat: profile tail is not integrable against s ds");

  auto integrand = [&](double s) -> cplx {
    return profile.f(s) * bessel::j0_fast(r * s) * s;
  };
  auto rate = [r](double) { return r + 1.0; };
  return quad::oscillatory(integrand, 0.0, profile.s_max, rate, abs_tol).value.real();
}

namespace {

/// Tail of the kernel integral from s0, rotated to the pi/6 ray where
/// e^{it(z^3+z)} decays for every phase branch past the stationary points.
cplx kernel_tail(double r, double t, double beta, double s0, double abs_tol) {
  const double theta = kPi / 6.0;
  const double drift = t * (3.0 * s0 * s0 + 1.0);  // lower bound scale for decay
  const double rho_cap = 6.0 + std::cbrt(90.0 / t) + 180.0 / std::max(drift - r, 0.5);

  if (r * s0 < 10.0) {
    // Small rs: keep J_0 whole (power series region; the cubic decay kills
    // the integrand long before |rz| leaves it).
    auto g = [&](cplx z) -> cplx {
      const cplx phase = cplx(0.0, 1.0) * t * (z * z * z + z);
      return std::pow(z, beta + 1.0) * std::exp(phase) * bessel::j0_complex(r * z);
    };
    auto rate = [&](double rho) {
      const double s = s0 + rho;
      return t * (3.0 * s * s + 1.0) + r;
    };
    return quad::ray(g, cplx(s0, 0.0), theta, rate, abs_tol, rho_cap).value;
  }

  // Large rs: split J_0 into the two Hankel envelopes; each piece carries
  // its full exponent i(t(z^3+z) +- rz), which has negative real part on
  // the ray (s0 is beyond every stationary point), so nothing overflows.
  auto g_plus = [&](cplx z) -> cplx {
    const cplx phase = cplx(0.0, 1.0) * (t * (z * z * z + z) + r * z);
    return 0.5 * std::pow(z, beta + 1.0) * std::exp(phase) *
           bessel::hankel1_envelope(r * z);
  };
  auto g_minus = [&](cplx z) -> cplx {
    const cplx phase = cplx(0.0, 1.0) * (t * (z * z * z + z) - r * z);
    return 0.5 * std::pow(z, beta + 1.0) * std::exp(phase) *
           bessel::hankel2_envelope(r * z);
  };
  auto rate_plus = [&](double rho) {
    const double s = s0 + rho;
    return t * (3.0 * s * s + 1.0) + r;
  };
  auto rate_minus = [&](double rho) {
    const double s = s0 + rho;
    return std::abs(t * (3.0 * s * s + 1.0) - r) + 1.0;
  };
  const cplx a = quad::ray(g_plus, cplx(s0, 0.0), theta, rate_plus, abs_tol, rho_cap).value;
  const cplx b = quad::ray(g_minus, cplx(s0, 0.0), theta, rate_minus, abs_tol, rho_cap).value;
  return a + b;
}

}  // namespace

double kernel_point(double r, double t, double beta, double abs_tol) {
  if (!(t > 0.0)) throw DomainError("kernel_point: requires t > 0");
  if (beta < 0.0 || beta > 1.0) throw DomainError("kernel_point: beta in [0,1]");
  const double s_star = r > t ? std::sqrt((r - t) / (3.0 * t)) : 0.0;
  const double s0 = std::max(2.0, 1.2 * s_star + 0.8);

  auto head_f = [&](double s) -> cplx {
    const double th = t * (s * s * s + s);
    return std::pow(s, beta + 1.0) * cplx(std::cos(th), std::sin(th)) *
           bessel::j0_fast(r * s);
  };
  auto head_rate = [&](double s) { return t * (3.0 * s * s + 1.0) + r; };
  const cplx head = quad::oscillatory(head_f, 0.0, s0, head_rate, abs_tol).value;
  const cplx tail = kernel_tail(r, t, beta, s0, abs_tol);
  return std::abs(head + tail);
}

double kernel_sup(double t, double beta, double r_max, const KernelOptions& opts) {
  if (t < opts.t_min)
    throw DomainError("kernel_sup: t below t_min (oscillatory quadrature regime)");
  if (!(r_max > 0.0)) throw DomainError("kernel_sup: r_max must be positive");
  std::set<double> grid;
  for (int i = 0; i <= opts.base_points; ++i)
    grid.insert(r_max * i / opts.base_points);
  // Double density near the stationary ridge r ~ t (width ~ t^{2/3} in r).
  const double half_width = 2.0 * std::pow(t, 2.0 / 3.0);
  const double lo = std::max(0.0, t - half_width);
  const double hi = std::min(r_max, t + half_width);
  if (hi > lo)
    for (int i = 0; i <= opts.ridge_points; ++i)
      grid.insert(lo + (hi - lo) * i / opts.ridge_points);
  double sup = 0.0;
  for (double r : grid) sup = std::max(sup, kernel_point(r, t, beta, opts.abs_tol));
  return sup;
}

void DecayFitReport::validate() const {
  if (times.size() != sup_values.size())
    throw StructuralError("DecayFitReport: size mismatch");
  for (std::size_t i = 0; i + 1 < times.size(); ++i)
    if (!(times[i + 1] > times[i]))
      throw StructuralError("DecayFitReport: times must be strictly increasing");
  for (double v : sup_values)
    if (!(v > 0.0)) throw StructuralError("DecayFitReport: sup values must be positive");
}

std::pair<double, double> fit_loglog(const std::vector<double>& x,
                                     const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw PreconditionError("fit_loglog: need >= 2 samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  const double slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double resid = std::log(y[i]) - intercept - slope * std::log(x[i]);
    ss += resid * resid;
  }
  const double var = n > 2 ? ss / (n - 2) / (sxx - sx * sx / n) : 0.0;
  return {slope, std::sqrt(std::max(var, 0.0))};
}

DecayFitReport decay_fit(double beta, const std::vector<double>& t_grid,
                         const KernelOptions& opts) {
  if (t_grid.size() < 4)
    throw PreconditionError("decay_fit: needs at least 4 time samples");
  DecayFitReport rep;
  rep.beta = beta;
  rep.times = t_grid;
  std::sort(rep.times.begin(), rep.times.end());
  for (double t : rep.times)
    rep.sup_values.push_back(kernel_sup(t, beta, 4.0 * t, opts));
  auto [slope, err] = fit_loglog(rep.times, rep.sup_values);
  rep.fitted_slope = slope;
  rep.slope_stderr = err;
  rep.validate();
  return rep;
}

VdcReport van_der_corput_check(const VdcProblem& p,
                               const std::vector<double>& lambda_grid) {
  if (!(p.b > p.a)) throw PreconditionError("van_der_corput_check: need a < b");
  for (int i = 0; i <= 64; ++i) {
    const double xi = p.a + (p.b - p.a) * i / 64.0;
    if (!(std::abs(p.fpp(xi)) > 1.0))
      throw PreconditionError("van_der_corput_check: |f''| <= 1 on the interval");
  }
  const double psi_b = std::abs(p.psi(p.b));
  const double dpsi_l1 =
      quad::adaptive([&](double x) -> cplx { return std::abs(p.dpsi(x)); }, p.a, p.b,
                     1e-12)
          .value.real();
  VdcReport rep;
  for (double lam : lambda_grid) {
    auto f = [&](double xi) -> cplx {
      const double th = lam * p.f(xi);
      return cplx(std::cos(th), std::sin(th)) * p.psi(xi);
    };
    auto rate = [&](double xi) { return lam * std::abs(p.fp(xi)) + 1.0; };
    const double lhs = std::abs(quad::oscillatory(f, p.a, p.b, rate, 1e-11).value);
    const double bound = (psi_b + dpsi_l1) / std::sqrt(lam);
    rep.lambdas.push_back(lam);
    rep.lhs.push_back(lhs);
    rep.ratios.push_back(lhs / bound);
    rep.max_ratio = std::max(rep.max_ratio, lhs / bound);
  }
  return rep;
}

namespace {

/// Walk the linear flow U^+(t) w0 on the stored time grid, handing each
/// physical slice to visit(slice, index, t).
void stream_linear_flow(const Field& w0, double T, double dt, const Symbol& op,
                        const std::function<void(const Field&, int, double)>& visit) {
  if (!(T > 0.0) || !(dt > 0.0))
    throw PreconditionError("linear flow: T and dt must be positive");
  const long nt = std::lround(T / dt);
  if (nt < 1 || std::abs(nt * dt - T) > 1e-9 * T)
    throw PreconditionError("linear flow: dt must divide T");
  const Field w0h = w0.in_rep(Rep::Fourier);
  const GridSpec& g = w0h.grid();
  // Precompute e^{-i phi dt} once; advance multiplicatively.
  std::vector<cplx> step(g.size()), opv(g.size());
  for (int ix = 0; ix < g.nx; ++ix) {
    const double kx = g.kx(ix);
    for (int iy = 0; iy < g.ny; ++iy) {
      const double th = phi_symbol(kx, g.ky(iy)) * dt;
      const std::size_t i = g.index(ix, iy);
      step[i] = cplx(std::cos(th), -std::sin(th));
      opv[i] = op.eval(kx, g.ky(iy));
    }
  }
  Field cur = w0h;
  for (long i = 0; i <= nt; ++i) {
    Field slice(g, Rep::Fourier);
    kernels::mul(slice.data(), cur.data(), opv.data(), g.size(), kernels::default_exec());
    visit(slice.to_physical(), static_cast<int>(i), i * dt);
    if (i < nt)
      kernels::mul_inplace(cur.data(), step.data(), g.size(), kernels::default_exec());
  }
}

}  // namespace

double strichartz_ratio(const Field& w0, double delta, double T, double dt) {
  if (delta < 0.0 || delta >= 0.5)
    throw DomainError("strichartz_ratio: delta must lie in [0, 1/2)");
  const double q = 3.0 / (1.0 + delta);
  std::vector<double> times, sup;
  stream_linear_flow(w0, T, dt, symbols::fractional_derivative(delta),
                     [&](const Field& phys, int, double t) {
                       times.push_back(t);
                       sup.push_back(phys.max_abs());
                     });
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < times.size(); ++i)
    acc += 0.5 * dt * (std::pow(sup[i], q) + std::pow(sup[i + 1], q));
  return std::pow(acc, 1.0 / q) / w0.l2();
}

double smoothing_ratio(const Field& w0, double T, double dt) {
  const GridSpec& g = w0.grid();
  const CubeMesh mesh = CubeMesh::from_grid(g);
  CubeL2Accum accum(g, mesh);
  stream_linear_flow(w0, T, dt, symbols::fractional_derivative(1.0),
                     [&](const Field& phys, int, double t) { accum.add_slice(phys, t); });
  return accum.value() / w0.l2();
}

double maximal_ratio(const Field& w0, double s, double T, double dt) {
  if (!(s > 1.5))
    throw DomainError("maximal_ratio: needs s > 3n/4 = 3/2 in dimension 2");
  const GridSpec& g = w0.grid();
  const CubeMesh mesh = CubeMesh::from_grid(g);
  MaximalAccum accum(g, mesh);
  stream_linear_flow(w0, T, dt, symbols::identity(),
                     [&](const Field& phys, int, double) { accum.add_slice(phys); });
  return accum.value() / ((1.0 + std::pow(T, 0.25)) * sobolev_norm(w0, s));
}

double frac_leibniz_defect(const Field& f, const Field& g, double m, double p) {
  if (!(m > 0.0 && m < 1.0)) throw DomainError("frac_leibniz_defect: m in (0,1)");
  if (!(p > 1.0) || p == kInf) throw DomainError("frac_leibniz_defect: p in (1,inf)");
  require_same_layout(f.grid(), g.grid(), "frac_leibniz_defect");
  const Field fp = f.in_rep(Rep::Physical);
  const Field gp = g.in_rep(Rep::Physical);
  const GridSpec& grid = fp.grid();

  Field prod(grid, Rep::Physical);
  kernels::mul(prod.data(), fp.data(), gp.data(), grid.size(), kernels::default_exec());
  const Field dm_fg = fractional_derivative(prod, m).in_rep(Rep::Physical);
  const Field dm_f = fractional_derivative(fp, m).in_rep(Rep::Physical);
  const Field dm_g = fractional_derivative(gp, m).in_rep(Rep::Physical);

  Field lhs(grid, Rep::Physical);
  for (std::size_t i = 0; i < grid.size(); ++i)
    lhs[i] = dm_fg[i] - fp[i] * dm_g[i] - gp[i] * dm_f[i];

  const double lhs_p = spatial_lp(lhs, p);
  const double rhs = spatial_lp(gp, kInf) * spatial_lp(dm_f, p);
  if (rhs < 1e-300) {
    const double scale = std::max(spatial_lp(fp, p) * spatial_lp(gp, kInf), 1.0);
    if (lhs_p > 1e-12 * scale)
      throw DefectError("frac_leibniz_defect: commutator nonzero with vanishing bound",
                        lhs_p);
    return 0.0;
  }
  return lhs_p / rhs;
}

HEnvelopeReport h_envelope_check(int k, const std::vector<double>& r_grid) {
  if (k < 0 || k > 2) throw DomainError("h_envelope_check: k in {0,1,2}");
  if (r_grid.empty() || r_grid.front() < 1.0)
    throw DomainError("h_envelope_check: r grid must start at >= 1 (asymptotic regime)");
  const double d = 0.05;  // finite-difference step
  HEnvelopeReport rep;
  rep.k = k;
  rep.r = r_grid;
  std::sort(rep.r.begin(), rep.r.end());
  for (double r : rep.r) {
    double mag = 0.0;
    if (k == 0) {
      mag = std::abs(bessel::h_function(r));
    } else if (k == 1) {
      mag = std::abs((bessel::h_function(r + d) - bessel::h_function(r - d)) / (2.0 * d));
    } else {
      mag = std::abs((bessel::h_function(r + d) - 2.0 * bessel::h_function(r) +
                      bessel::h_function(r - d)) /
                     (d * d));
    }
    rep.magnitude.push_back(mag);
  }
  std::vector<double> shifted(rep.r.size());
  for (std::size_t i = 0; i < rep.r.size(); ++i) shifted[i] = 1.0 + rep.r[i];
  rep.fitted_exponent = fit_loglog(shifted, rep.magnitude).first;
  rep.positive_smooth = true;
  for (double v : rep.magnitude)
    if (!(v > 0.0)) rep.positive_smooth = false;
  for (std::size_t i = 2; i < rep.magnitude.size(); ++i) {
    const double dd = std::log(rep.magnitude[i]) - 2.0 * std::log(rep.magnitude[i - 1]) +
                      std::log(rep.magnitude[i - 2]);
    if (std::abs(dd) > 0.5) rep.positive_smooth = false;
  }
  return rep;
}

}  // namespace bql::estimates
