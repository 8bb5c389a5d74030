#include "bql/reformulate.hpp"

#include <cmath>
#include <sstream>

#include "bql/symbol.hpp"

namespace bql {

double state_l2(const StateEtaPhi& s) {
  const double a = s.eta.l2(), b = s.phi.l2();
  return std::sqrt(a * a + b * b);
}

double state_l2(const StateUV& s) {
  const double a = s.u.l2(), b = s.v.l2();
  return std::sqrt(a * a + b * b);
}

double state_distance(const StateW& a, const StateW& b) {
  const double d1 = l2_distance(a.w1, b.w1);
  const double d2 = l2_distance(a.w2, b.w2);
  const double d3 = l2_distance(a.w3, b.w3);
  const double d4 = l2_distance(a.w4, b.w4);
  return std::sqrt(d1 * d1 + d2 * d2 + d3 * d3 + d4 * d4);
}

StateEtaPhi in_rep(const StateEtaPhi& s, Rep r) {
  return {s.eta.in_rep(r), s.phi.in_rep(r)};
}
StateUV in_rep(const StateUV& s, Rep r) { return {s.u.in_rep(r), s.v.in_rep(r)}; }
StateW in_rep(const StateW& s, Rep r) {
  return {s.w1.in_rep(r), s.w2.in_rep(r), s.w3.in_rep(r), s.w4.in_rep(r)};
}

StateUV diagonalize(const StateEtaPhi& s) {
  require_same_layout(s.eta.grid(), s.phi.grid(), "diagonalize");
  require_mean_zero(s.eta, "diagonalize(eta)");
  require_mean_zero(s.phi, "diagonalize(phi)");
  const Field eh = s.eta.in_rep(Rep::Fourier);
  const Field ph = s.phi.in_rep(Rep::Fourier);
  const GridSpec& g = eh.grid();
  Field u(g, Rep::Fourier), v(g, Rep::Fourier);
  for (int ix = 0; ix < g.nx; ++ix) {
    const double kx = g.kx(ix);
    for (int iy = 0; iy < g.ny; ++iy) {
      const double r = std::hypot(kx, g.ky(iy));
      if (r == 0.0) continue;  // zero modes stay 0
      const cplx e = eh.at(ix, iy), p = ph.at(ix, iy);
      const cplx half_ie = cplx(0.0, 1.0) * e / (2.0 * r);
      u.at(ix, iy) = -half_ie + 0.5 * p;
      v.at(ix, iy) = half_ie + 0.5 * p;
    }
  }
  return {std::move(u), std::move(v)};
}

StateEtaPhi undiagonalize(const StateUV& s) {
  require_same_layout(s.u.grid(), s.v.grid(), "undiagonalize");
  const Field uh = s.u.in_rep(Rep::Fourier);
  const Field vh = s.v.in_rep(Rep::Fourier);
  const GridSpec& g = uh.grid();
  Field eta(g, Rep::Fourier), phi(g, Rep::Fourier);
  for (int ix = 0; ix < g.nx; ++ix) {
    const double kx = g.kx(ix);
    for (int iy = 0; iy < g.ny; ++iy) {
      const double r = std::hypot(kx, g.ky(iy));
      if (r == 0.0) continue;
      const cplx u = uh.at(ix, iy), v = vh.at(ix, iy);
      eta.at(ix, iy) = cplx(0.0, r) * (u - v);
      phi.at(ix, iy) = u + v;
    }
  }
  return {std::move(eta), std::move(phi)};
}

StateW differentiate_to_w(const StateUV& s) {
  require_same_layout(s.u.grid(), s.v.grid(), "differentiate_to_w");
  return {derivative(s.u, 1), derivative(s.u, 2), derivative(s.v, 1),
          derivative(s.v, 2)};
}

namespace {

// u^(k) = -i (k1 a^ + k2 b^) / |k|^2, zero mode 0.
Field solve_gradient(const Field& a, const Field& b) {
  const Field ah = a.in_rep(Rep::Fourier);
  const Field bh = b.in_rep(Rep::Fourier);
  const GridSpec& g = ah.grid();
  Field u(g, Rep::Fourier);
  for (int ix = 0; ix < g.nx; ++ix) {
    const double kx = g.kx(ix);
    for (int iy = 0; iy < g.ny; ++iy) {
      const double ky = g.ky(iy);
      const double r2 = kx * kx + ky * ky;
      if (r2 == 0.0) continue;
      u.at(ix, iy) = cplx(0.0, -1.0) * (kx * ah.at(ix, iy) + ky * bh.at(ix, iy)) / r2;
    }
  }
  return u;
}

}  // namespace

std::pair<double, double> curl_residual(const StateW& s) {
  const Field c1 = sub(derivative(s.w1, 2), derivative(s.w2, 1));
  const Field c2 = sub(derivative(s.w3, 2), derivative(s.w4, 1));
  return {c1.l2(), c2.l2()};
}

double closedness_residual(const StateW& s) {
  const auto [c1, c2] = curl_residual(s);
  const double scale = s.l2();
  if (scale == 0.0) return 0.0;
  return std::sqrt(c1 * c1 + c2 * c2) / scale;
}

StateUV reconstruct_from_w(const StateW& s, double closedness_tol) {
  require_same_layout(s.w1.grid(), s.w2.grid(), "reconstruct_from_w");
  require_same_layout(s.w3.grid(), s.w4.grid(), "reconstruct_from_w");
  const double res = closedness_residual(s);
  if (res > closedness_tol) {
    std::ostringstream msg;
    msg << "reconstruct_from_w: closedness residual " << res
        << " exceeds tolerance " << closedness_tol;
    throw DefectError(msg.str(), res);
  }
  return {solve_gradient(s.w1, s.w2), solve_gradient(s.w3, s.w4)};
}

double conjugate_pair_deviation(const StateW& s) {
  const Field w1 = s.w1.in_rep(Rep::Physical);
  const Field w2 = s.w2.in_rep(Rep::Physical);
  const Field w3 = s.w3.in_rep(Rep::Physical);
  const Field w4 = s.w4.in_rep(Rep::Physical);
  Field d1(w1.grid(), Rep::Physical), d2(w2.grid(), Rep::Physical);
  for (std::size_t i = 0; i < w1.size(); ++i) {
    d1[i] = w3[i] - std::conj(w1[i]);
    d2[i] = w4[i] - std::conj(w2[i]);
  }
  const double a = d1.l2(), b = d2.l2();
  const double scale = s.l2();
  if (scale == 0.0) return 0.0;
  return std::sqrt(a * a + b * b) / scale;
}

}  // namespace bql
