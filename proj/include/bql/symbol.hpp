#pragma once

#include <functional>
#include <string>

#include "bql/field.hpp"

namespace bql {

/// Fourier multiplier: an evaluation rule wavevector -> complex scalar plus
/// a label for reports.  Evaluation must be finite at every grid wavevector
/// (including k = 0); apply_multiplier enforces this.
struct Symbol {
  std::string label;
  std::function<cplx(double kx, double ky)> eval;
};

/// Sign convention of the two propagators: Plus is U^+ with multiplier
/// e^{-i t phi(k)} (solves w_t + i sqrt(-Lap)(1-Lap) w = 0), Minus is U^-
/// with e^{+i t phi(k)}.
enum class PropagatorSign : int { Plus = +1, Minus = -1 };

/// Dispersion symbol phi(k) = |k|^3 + |k|.
double phi_symbol(double kx, double ky);
/// |grad phi|(k) = 3 |k|^2 + 1.
double phi_gradient_magnitude(double kx, double ky);

namespace symbols {

Symbol identity();
Symbol phi();
/// Riesz transform R_l: -i k_l / |k|, zero at k = 0.  l in {1, 2}.
Symbol riesz(int l);
/// D^s = (-Lap)^{s/2}: |k|^s; the k=0 coefficient maps to 0 for s > 0 and is
/// untouched for s = 0.  Throws DomainError for s < 0.
Symbol fractional_derivative(double s);
/// d/dx_l: i k_l.  l in {1, 2}.
Symbol derivative(int l);
/// e^{-sign * i t phi(k)}.
Symbol propagator(double t, PropagatorSign sign);
/// (1 + |k|^2)^{s/2}, the H^s weight.
Symbol sobolev_weight(double s);

}  // namespace symbols

/// Multiply each Fourier coefficient of f by m(k); the result is returned in
/// out_rep.  Throws DefectError naming the wavevector if m evaluates to a
/// non-finite value anywhere on the grid.
Field apply_multiplier(const Field& f, const Symbol& m, Rep out_rep);
Field apply_multiplier(const Field& f, const Symbol& m);  // keeps f's rep

Field riesz(const Field& f, int l);
Field fractional_derivative(const Field& f, double s);
Field derivative(const Field& f, int l);
Field propagator(const Field& f, double t, PropagatorSign sign);

/// Zero every Fourier coefficient with either frequency index above
/// dealias_fraction * Nyquist.  Output in the input representation.
Field dealias(const Field& f);

}  // namespace bql
