#pragma once

#include <complex>

#include "bql/grid.hpp"

namespace bql::fft {

/// Unnormalized 2D complex DFTs (FFTW conventions: forward is e^{-i k x}).
/// Plans are cached per (nx, ny, direction) and created with FFTW_ESTIMATE,
/// so transforms are deterministic.  Execution on distinct arrays is
/// thread-safe; plan creation is serialized internally.
void forward(const GridSpec& g, const std::complex<double>* in, std::complex<double>* out);
void backward(const GridSpec& g, const std::complex<double>* in, std::complex<double>* out);

}  // namespace bql::fft
