#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>

#include "bql/errors.hpp"

namespace bql {

/// Periodic computational box [0,Lx) x [0,Ly) sampled on nx x ny points.
///
/// Storage is row-major with flat index ix*ny + iy.  The Fourier mode at
/// storage index (ix,iy) carries the wavevector (2*pi*jx/Lx, 2*pi*jy/Ly)
/// where jx, jy are the signed frequency indices (Nyquist maps to -n/2),
/// so index <-> wavevector is a bijection.
struct GridSpec {
  int nx = 0;
  int ny = 0;
  double Lx = 0.0;
  double Ly = 0.0;
  double dealias_fraction = 2.0 / 3.0;

  void validate() const {
    if (nx < 8 || ny < 8 || nx % 2 != 0 || ny % 2 != 0)
      throw StructuralError("GridSpec: nx, ny must be even and >= 8");
    if (!(Lx > 0.0) || !(Ly > 0.0))
      throw StructuralError("GridSpec: box sides must be positive");
    if (!(dealias_fraction > 0.0) || dealias_fraction > 1.0)
      throw StructuralError("GridSpec: dealias_fraction must lie in (0,1]");
  }

  std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
  std::size_t index(int ix, int iy) const { return static_cast<std::size_t>(ix) * ny + iy; }

  double dx() const { return Lx / nx; }
  double dy() const { return Ly / ny; }
  double cell() const { return dx() * dy(); }

  double x(int ix) const { return ix * dx(); }
  double y(int iy) const { return iy * dy(); }

  /// Signed frequency index for storage index (Nyquist -> -n/2).
  int freq_x(int ix) const { return ix < nx / 2 ? ix : ix - nx; }
  int freq_y(int iy) const { return iy < ny / 2 ? iy : iy - ny; }

  double kx(int ix) const { return 2.0 * std::numbers::pi * freq_x(ix) / Lx; }
  double ky(int iy) const { return 2.0 * std::numbers::pi * freq_y(iy) / Ly; }

  /// Storage index of the signed frequency jx in [-nx/2, nx/2-1].
  int mode_ix(int jx) const {
    if (jx < -nx / 2 || jx >= nx / 2)
      throw StructuralError("GridSpec: frequency index out of range");
    return jx >= 0 ? jx : jx + nx;
  }
  int mode_iy(int jy) const {
    if (jy < -ny / 2 || jy >= ny / 2)
      throw StructuralError("GridSpec: frequency index out of range");
    return jy >= 0 ? jy : jy + ny;
  }

  /// True when both frequency indices survive the dealias truncation.
  bool keep_mode(int ix, int iy) const {
    const double tx = dealias_fraction * (nx / 2);
    const double ty = dealias_fraction * (ny / 2);
    return std::abs(freq_x(ix)) <= tx && std::abs(freq_y(iy)) <= ty;
  }

  bool same_layout(const GridSpec& o) const {
    return nx == o.nx && ny == o.ny && Lx == o.Lx && Ly == o.Ly;
  }
  bool operator==(const GridSpec& o) const {
    return same_layout(o) && dealias_fraction == o.dealias_fraction;
  }
};

}  // namespace bql
