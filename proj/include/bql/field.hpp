#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "bql/grid.hpp"
#include "bql/kernels.hpp"

namespace bql {

using cplx = std::complex<double>;

enum class Rep : std::uint8_t { Physical = 0, Fourier = 1 };

/// Complex scalar field on a GridSpec, in physical or Fourier
/// representation.  The DFT is unitary (forward and inverse both scaled by
/// 1/sqrt(nx*ny)) so the discrete L2 norm
///   ||f||_2 = sqrt( dx*dy * sum |f_i|^2 )
/// is the same number in either representation (Plancherel with constant 1).
class Field {
 public:
  Field() = default;
  Field(const GridSpec& g, Rep rep) : grid_(g), rep_(rep), data_(g.size()) {
    g.validate();
  }

  static Field physical(const GridSpec& g) { return Field(g, Rep::Physical); }
  static Field fourier(const GridSpec& g) { return Field(g, Rep::Fourier); }

  const GridSpec& grid() const { return grid_; }
  Rep rep() const { return rep_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }
  cplx& operator[](std::size_t i) { return data_[i]; }
  const cplx& operator[](std::size_t i) const { return data_[i]; }
  cplx& at(int ix, int iy) { return data_[grid_.index(ix, iy)]; }
  const cplx& at(int ix, int iy) const { return data_[grid_.index(ix, iy)]; }

  /// Representation toggles (unitary normalization).
  Field to_fourier() const;
  Field to_physical() const;
  Field in_rep(Rep r) const { return r == rep_ ? *this : (r == Rep::Fourier ? to_fourier() : to_physical()); }

  /// Discrete L2 norm with cell weights; representation independent.
  double l2() const;
  /// Max pointwise modulus in the current representation.
  double max_abs() const;
  bool finite() const;

  cplx zero_mode() const { return rep_ == Rep::Fourier ? data_[0] : cplx{}; }

 private:
  GridSpec grid_;
  Rep rep_ = Rep::Physical;
  std::vector<cplx> data_;
};

// Elementwise arithmetic; grids and representations must match.
Field add(const Field& a, const Field& b);
Field sub(const Field& a, const Field& b);
Field scaled(const Field& a, cplx alpha);
void add_scaled_inplace(Field& y, cplx alpha, const Field& x);

/// L2 norm of (a - b); the grids and representations must match.
double l2_distance(const Field& a, const Field& b);

/// Relative deviation from Hermitian symmetry of the Fourier data
/// (0 for a real-valued field): max_k |f(k) - conj(f(-k))| / max_k |f(k)|.
double hermitian_deviation(const Field& f);

/// Relative magnitude of the zero mode: |f^(0)| / ||f^||  (plain
/// coefficient norms).  Zero field gives 0.
double mean_magnitude(const Field& f);

void require_mean_zero(const Field& f, const char* what, double tol = 1e-10);

/// Zero the k=0 coefficient.
Field project_mean_zero(const Field& f);

void require_same_layout(const GridSpec& a, const GridSpec& b, const char* what);

}  // namespace bql
