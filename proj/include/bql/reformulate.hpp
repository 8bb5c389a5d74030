#pragma once

#include <utility>

#include "bql/state.hpp"

namespace bql {

/// (eta, phi) -> (u, v):
///   u^(k) = -i/(2|k|) eta^(k) + phi^(k)/2,
///   v^(k) = +i/(2|k|) eta^(k) + phi^(k)/2,     (k != 0; zero modes 0).
/// Inputs must be mean zero (PreconditionError otherwise).
StateUV diagonalize(const StateEtaPhi& s);

/// (u, v) -> (eta, phi): eta = i D^1 (u - v), phi = u + v; zero modes 0.
/// Exact inverse of diagonalize on mean-zero states.
StateEtaPhi undiagonalize(const StateUV& s);

/// (u, v) -> w by spectral differentiation (multiplier i k_l).
StateW differentiate_to_w(const StateUV& s);

/// w -> (u, v) by solving the gradient system in Fourier space:
///   u^(k) = -i (k1 w1^ + k2 w2^) / |k|^2   (k != 0; zero mode 0),
/// and the same for v from (w3, w4).  Exact left inverse of
/// differentiate_to_w on mean-zero states.  Throws DefectError carrying the
/// curl residual when the closedness check fails.
StateUV reconstruct_from_w(const StateW& s, double closedness_tol = 1e-8);

/// Discrete L2 norms of d2 w1 - d1 w2 and d2 w3 - d1 w4.
std::pair<double, double> curl_residual(const StateW& s);

/// Relative closedness residual: curl norm over the L2 size of the pair
/// (0 for the zero state).  This is what reconstruct_from_w checks.
double closedness_residual(const StateW& s);

/// Deviation of (w3, w4) from the complex conjugate of (w1, w2) in physical
/// space, relative to the state size.  Zero exactly when the reconstructed
/// (eta, phi) are real.
double conjugate_pair_deviation(const StateW& s);

}  // namespace bql
