#include "bql/field.hpp"

#include <cmath>
#include <string>

#include "bql/fft.hpp"

namespace bql {

Field Field::to_fourier() const {
  if (rep_ == Rep::Fourier) return *this;
  Field out(grid_, Rep::Fourier);
  fft::forward(grid_, data_.data(), out.data());
  const cplx s = 1.0 / std::sqrt(static_cast<double>(grid_.size()));
  kernels::scale(out.data(), s, out.data(), out.size(), kernels::default_exec());
  return out;
}

Field Field::to_physical() const {
  if (rep_ == Rep::Physical) return *this;
  Field out(grid_, Rep::Physical);
  fft::backward(grid_, data_.data(), out.data());
  const cplx s = 1.0 / std::sqrt(static_cast<double>(grid_.size()));
  kernels::scale(out.data(), s, out.data(), out.size(), kernels::default_exec());
  return out;
}

double Field::l2() const {
  const double s = kernels::sum_abs2(data_.data(), data_.size(), kernels::default_exec());
  return std::sqrt(grid_.cell() * s);
}

double Field::max_abs() const {
  return kernels::max_abs(data_.data(), data_.size(), kernels::default_exec());
}

bool Field::finite() const {
  const double s = kernels::sum_abs2(data_.data(), data_.size(), kernels::default_exec());
  return std::isfinite(s);
}

void require_same_layout(const GridSpec& a, const GridSpec& b, const char* what) {
  if (!a.same_layout(b))
    throw StructuralError(std::string(what) + ": grid metadata mismatch");
}

namespace {
void require_same_shape(const Field& a, const Field& b, const char* what) {
  require_same_layout(a.grid(), b.grid(), what);
  if (a.rep() != b.rep())
    throw StructuralError(std::string(what) + ": representation mismatch");
}
}  // namespace

Field add(const Field& a, const Field& b) {
  require_same_shape(a, b, "add");
  Field out(a.grid(), a.rep());
  kernels::axpy(out.data(), 1.0, a.data(), b.data(), out.size(), kernels::default_exec());
  return out;
}

Field sub(const Field& a, const Field& b) {
  require_same_shape(a, b, "sub");
  Field out(a.grid(), a.rep());
  kernels::axpy(out.data(), -1.0, b.data(), a.data(), out.size(), kernels::default_exec());
  return out;
}

Field scaled(const Field& a, cplx alpha) {
  Field out(a.grid(), a.rep());
  kernels::scale(out.data(), alpha, a.data(), out.size(), kernels::default_exec());
  return out;
}

void add_scaled_inplace(Field& y, cplx alpha, const Field& x) {
  require_same_shape(y, x, "add_scaled_inplace");
  kernels::axpy_acc(y.data(), alpha, x.data(), y.size(), kernels::default_exec());
}

double l2_distance(const Field& a, const Field& b) {
  return sub(a, b).l2();
}

double hermitian_deviation(const Field& f) {
  const Field fh = f.in_rep(Rep::Fourier);
  const GridSpec& g = fh.grid();
  double max_dev2 = 0.0, max_mag2 = 0.0;
  for (int ix = 0; ix < g.nx; ++ix) {
    const int rx = (g.nx - ix) % g.nx;
    for (int iy = 0; iy < g.ny; ++iy) {
      const int ry = (g.ny - iy) % g.ny;
      const cplx v = fh.at(ix, iy);
      const cplx d = v - std::conj(fh.at(rx, ry));
      max_dev2 = std::max(max_dev2, std::norm(d));
      max_mag2 = std::max(max_mag2, std::norm(v));
    }
  }
  if (max_mag2 == 0.0) return 0.0;
  return std::sqrt(max_dev2 / max_mag2);
}

double mean_magnitude(const Field& f) {
  const Field fh = f.in_rep(Rep::Fourier);
  const double total = std::sqrt(
      kernels::sum_abs2(fh.data(), fh.size(), kernels::default_exec()));
  if (total == 0.0) return 0.0;
  return std::abs(fh[0]) / total;
}

void require_mean_zero(const Field& f, const char* what, double tol) {
  if (mean_magnitude(f) > tol)
    throw PreconditionError(std::string(what) +
                            ": input must be mean zero (project first)");
}

Field project_mean_zero(const Field& f) {
  Field fh = f.in_rep(Rep::Fourier);
  fh[0] = 0.0;
  return fh.in_rep(f.rep());
}

}  // namespace bql
