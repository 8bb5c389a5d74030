#pragma once

#include <cstdint>

#include "bql/field.hpp"

namespace bql {

/// Real-valued, mean-zero random field synthesized in Fourier space.
///
/// Coefficients are drawn for the fixed logical mode set
/// 0 < max(|jx|,|jy|) <= band_modes with Gaussian amplitudes damped by
/// e^{-|k|^2/(2 sigma_k^2)}, then Hermitian-symmetrized.  The draw order
/// depends only on (seed, band_modes), so the same seed produces samples of
/// the same function on any grid that resolves the band (refinement
/// studies rely on this).
Field random_real_field(const GridSpec& g, std::uint64_t seed, int band_modes,
                        double sigma_k, double amplitude = 1.0);

/// Mean-removed Gaussian bump amp * exp(-((x-x0)^2+(y-y0)^2)/(2 width^2)).
Field gaussian_bump(const GridSpec& g, double x0, double y0, double width,
                    double amplitude);

/// Single Fourier mode amp * e^{i(kx x + ky y)} at signed frequency (jx, jy).
Field single_mode(const GridSpec& g, int jx, int jy, cplx amplitude);

/// Real cosine mode amp * cos(kx x + ky y).
Field cosine_mode(const GridSpec& g, int jx, int jy, double amplitude);

}  // namespace bql
