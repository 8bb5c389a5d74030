#include "bql/synth.hpp"

#include <cmath>

#include "bql/rng.hpp"

namespace bql {

Field random_real_field(const GridSpec& g, std::uint64_t seed, int band_modes,
                        double sigma_k, double amplitude) {
  g.validate();
  if (band_modes < 1 || band_modes >= g.nx / 2 || band_modes >= g.ny / 2)
    throw DomainError("random_real_field: band_modes must fit below Nyquist");
  SplitMix64 rng(seed);
  Field fh(g, Rep::Fourier);
  // Fixed draw order over logical modes; grid-independent function.
  for (int jx = -band_modes; jx <= band_modes; ++jx) {
    for (int jy = -band_modes; jy <= band_modes; ++jy) {
      const double re = rng.next_gaussian();
      const double im = rng.next_gaussian();
      if (jx == 0 && jy == 0) continue;  // mean zero (uniforms still consumed)
      const double kx = 2.0 * std::numbers::pi * jx / g.Lx;
      const double ky = 2.0 * std::numbers::pi * jy / g.Ly;
      const double damp = std::exp(-(kx * kx + ky * ky) / (2.0 * sigma_k * sigma_k));
      fh.at(g.mode_ix(jx), g.mode_iy(jy)) = cplx(re, im) * damp;
    }
  }
  // Hermitian-symmetrize: f(k) <- (f(k) + conj(f(-k)))/2.
  Field sym(g, Rep::Fourier);
  for (int ix = 0; ix < g.nx; ++ix) {
    const int rx = (g.nx - ix) % g.nx;
    for (int iy = 0; iy < g.ny; ++iy) {
      const int ry = (g.ny - iy) % g.ny;
      sym.at(ix, iy) = 0.5 * (fh.at(ix, iy) + std::conj(fh.at(rx, ry)));
    }
  }
  const double norm = sym.l2();
  if (norm > 0.0) sym = scaled(sym, amplitude / norm);
  return sym.to_physical();
}

Field gaussian_bump(const GridSpec& g, double x0, double y0, double width,
                    double amplitude) {
  g.validate();
  if (!(width > 0.0)) throw DomainError("gaussian_bump: width must be positive");
  Field f(g, Rep::Physical);
  for (int ix = 0; ix < g.nx; ++ix) {
    const double dxx = g.x(ix) - x0;
    for (int iy = 0; iy < g.ny; ++iy) {
      const double dyy = g.y(iy) - y0;
      f.at(ix, iy) = amplitude * std::exp(-(dxx * dxx + dyy * dyy) / (2.0 * width * width));
    }
  }
  return project_mean_zero(f);
}

Field single_mode(const GridSpec& g, int jx, int jy, cplx amplitude) {
  g.validate();
  Field f(g, Rep::Physical);
  const double kx = 2.0 * std::numbers::pi * jx / g.Lx;
  const double ky = 2.0 * std::numbers::pi * jy / g.Ly;
  for (int ix = 0; ix < g.nx; ++ix)
    for (int iy = 0; iy < g.ny; ++iy) {
      const double th = kx * g.x(ix) + ky * g.y(iy);
      f.at(ix, iy) = amplitude * cplx(std::cos(th), std::sin(th));
    }
  return f;
}

Field cosine_mode(const GridSpec& g, int jx, int jy, double amplitude) {
  g.validate();
  Field f(g, Rep::Physical);
  const double kx = 2.0 * std::numbers::pi * jx / g.Lx;
  const double ky = 2.0 * std::numbers::pi * jy / g.Ly;
  for (int ix = 0; ix < g.nx; ++ix)
    for (int iy = 0; iy < g.ny; ++iy)
      f.at(ix, iy) = amplitude * std::cos(kx * g.x(ix) + ky * g.y(iy));
  return f;
}

}  // namespace bql
