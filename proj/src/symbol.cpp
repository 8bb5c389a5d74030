#include "bql/symbol.hpp"

#include <cmath>
#include <sstream>

namespace bql {

double phi_symbol(double kx, double ky) {
  const double r = std::hypot(kx, ky);
  return r * r * r + r;
}

double phi_gradient_magnitude(double kx, double ky) {
  const double r2 = kx * kx + ky * ky;
  return 3.0 * r2 + 1.0;
}

namespace symbols {

Symbol identity() {
  return {"1", [](double, double) -> cplx { return 1.0; }};
}

Symbol phi() {
  return {"phi", [](double kx, double ky) -> cplx { return phi_symbol(kx, ky); }};
}

Symbol riesz(int l) {
  if (l != 1 && l != 2) throw DomainError("riesz: l must be 1 or 2");
  return {l == 1 ? "R1" : "R2", [l](double kx, double ky) -> cplx {
            const double r = std::hypot(kx, ky);
            if (r == 0.0) return 0.0;
            const double kl = l == 1 ? kx : ky;
            return cplx(0.0, -kl / r);
          }};
}

Symbol fractional_derivative(double s) {
  if (s < 0.0) throw DomainError("fractional_derivative: s must be >= 0");
  std::ostringstream lbl;
  lbl << "D^" << s;
  if (s == 0.0) return {lbl.str(), [](double, double) -> cplx { return 1.0; }};
  return {lbl.str(), [s](double kx, double ky) -> cplx {
            const double r = std::hypot(kx, ky);
            if (r == 0.0) return 0.0;
            return std::pow(r, s);
          }};
}

Symbol derivative(int l) {
  if (l != 1 && l != 2) throw DomainError("derivative: l must be 1 or 2");
  return {l == 1 ? "d/dx1" : "d/dx2", [l](double kx, double ky) -> cplx {
            return cplx(0.0, l == 1 ? kx : ky);
          }};
}

Symbol propagator(double t, PropagatorSign sign) {
  std::ostringstream lbl;
  lbl << "U" << (sign == PropagatorSign::Plus ? "+" : "-") << "(" << t << ")";
  const double sg = static_cast<double>(static_cast<int>(sign));
  return {lbl.str(), [t, sg](double kx, double ky) -> cplx {
            const double theta = -sg * t * phi_symbol(kx, ky);
            return cplx(std::cos(theta), std::sin(theta));
          }};
}

Symbol sobolev_weight(double s) {
  std::ostringstream lbl;
  lbl << "(1-Lap)^" << s / 2;
  return {lbl.str(), [s](double kx, double ky) -> cplx {
            return std::pow(1.0 + kx * kx + ky * ky, 0.5 * s);
          }};
}

}  // namespace symbols

Field apply_multiplier(const Field& f, const Symbol& m, Rep out_rep) {
  Field fh = f.in_rep(Rep::Fourier);
  const GridSpec& g = fh.grid();
  for (int ix = 0; ix < g.nx; ++ix) {
    const double kx = g.kx(ix);
    for (int iy = 0; iy < g.ny; ++iy) {
      const cplx v = m.eval(kx, g.ky(iy));
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        std::ostringstream msg;
        msg << "apply_multiplier: symbol '" << m.label
            << "' is non-finite at wavevector (" << kx << ", " << g.ky(iy) << ")";
        throw DefectError(msg.str(), std::abs(v));
      }
      fh.at(ix, iy) *= v;
    }
  }
  return fh.in_rep(out_rep);
}

Field apply_multiplier(const Field& f, const Symbol& m) {
  return apply_multiplier(f, m, f.rep());
}

Field riesz(const Field& f, int l) { return apply_multiplier(f, symbols::riesz(l)); }

Field fractional_derivative(const Field& f, double s) {
  return apply_multiplier(f, symbols::fractional_derivative(s));
}

Field derivative(const Field& f, int l) {
  return apply_multiplier(f, symbols::derivative(l));
}

Field propagator(const Field& f, double t, PropagatorSign sign) {
  return apply_multiplier(f, symbols::propagator(t, sign));
}

Field dealias(const Field& f) {
  Field fh = f.in_rep(Rep::Fourier);
  const GridSpec& g = fh.grid();
  for (int ix = 0; ix < g.nx; ++ix)
    for (int iy = 0; iy < g.ny; ++iy)
      if (!g.keep_mode(ix, iy)) fh.at(ix, iy) = 0.0;
  return fh.in_rep(f.rep());
}

}  // namespace bql
