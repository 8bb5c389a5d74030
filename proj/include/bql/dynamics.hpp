#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "bql/reformulate.hpp"
#include "bql/state.hpp"

namespace bql {

struct StepperInfo {
  std::string name;
  double dt = 0.0;
  double dealias_fraction = 2.0 / 3.0;
};

/// Time-indexed sequence of states on a uniform time grid starting at 0.
template <class State>
struct Trajectory {
  GridSpec grid;
  std::vector<double> times;
  std::vector<State> states;
  StepperInfo meta;

  double T() const { return times.empty() ? 0.0 : times.back(); }
  double dt() const { return times.size() < 2 ? 0.0 : times[1] - times[0]; }

  void validate() const {
    if (times.size() != states.size())
      throw StructuralError("Trajectory: times/states size mismatch");
    if (times.size() < 2) return;
    if (times.front() != 0.0)
      throw StructuralError("Trajectory: time grid must start at 0");
    const double d = times[1] - times[0];
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
      const double step = times[i + 1] - times[i];
      if (!(step > 0.0) || std::abs(step - d) > 1e-14 * std::max(1.0, d))
        throw StructuralError("Trajectory: time grid must be uniform and increasing");
    }
  }
};

using WTrajectory = Trajectory<StateW>;
using EtaPhiTrajectory = Trajectory<StateEtaPhi>;

/// Fixed-point iteration diagnostics.
struct PicardReport {
  int iterate_count = 0;
  std::vector<double> successive_diffs;  // sup-over-time L2 between iterates
  bool converged = false;
  double contraction_ratio_estimate = 0.0;
};

struct PicardNonConvergence : NumericalError {
  PicardReport report;
  PicardNonConvergence(const std::string& what, PicardReport rep)
      : NumericalError(what), report(std::move(rep)) {}
};

struct RhsOptions {
  bool nonlinearity = true;
};

struct SimulateOptions {
  bool nonlinearity = true;
  int save_every = 1;
  double closedness_tol = 1e-8;
};

/// Nonlinearities of the diagonalized system at p = 1:
///   N1 = -1/2 [ R1(g h1) + R2(g h2) ],   g = D^1(u - v),  h_l = d_l(u + v),
///   N2 =  1/4 [ h1^2 + h2^2 ],
/// with both products dealiased.  Results in Fourier representation.
std::pair<Field, Field> nonlinearity_uv(const StateUV& s);

/// Nonlinear right-hand sides F1..F4 of the w-system (the linear part is
/// handled by the integrating factor):
///   F1 = d1(  K/2 - L3/4 ),  F2 = d2(  K/2 - L3/4 ),
///   F3 = d1( -K/2 - L3/4 ),  F4 = d2( -K/2 - L3/4 ),
/// where K = R1 L1 + R2 L2 and
///   L1 = (R1 w1 + R2 w2 - R1 w3 - R2 w4)(w1 + w3),
///   L2 = (same first factor)(w2 + w4),
///   L3 = (w1 + w3)^2 + (w2 + w4)^2,
/// products dealiased.  Results in Fourier representation.
std::array<Field, 4> rhs_w(const StateW& s, const RhsOptions& opts = {});

/// Full right-hand side (linear + nonlinear) of the original system, p = 1:
///   eta_t = |k|^2 (1 + |k|^2) phi^ - div[ eta grad(phi) ],
///   phi_t = -(1 + |k|^2) eta^ - 1/2 (phi_x1^2 + phi_x2^2),
/// products dealiased.  Used for residual checking.
std::pair<Field, Field> rhs_etaphi(const StateEtaPhi& s);

/// One classical RK4 step in integrating-factor variables y = e^{+t Lambda} w
/// where Lambda is the diagonal linear symbol (+i phi for w1, w2 and -i phi
/// for w3, w4).  Exact for the linear flow.
StateW step_ifrk4(const StateW& s, double dt, const RhsOptions& opts = {});

/// Evolve the w-system with the IF-RK4 stepper.  dt must divide T; the
/// initial state must be closed.  Aborts with NumericalError reporting the
/// last healthy time if the solution stops being finite.
WTrajectory simulate(const StateW& w0, double T, double dt,
                     const SimulateOptions& opts = {});

/// Duhamel fixed-point iteration w^{k+1}(t) = U(t) w0 + int_0^t U(t-t') F(w^k)
/// on nt+1 uniform slices (nt even; composite Simpson with a 3-point edge
/// rule for odd prefixes).  The initial iterate is the linear flow.  Stops
/// when the sup-over-time L2 difference drops below tol; throws
/// PicardNonConvergence carrying the report when max_iter is exhausted
/// (the signature of T too large for the contraction).
std::pair<WTrajectory, PicardReport> picard_solve(const StateW& w0, double T,
                                                  int nt, int max_iter,
                                                  double tol);

/// Per-slice defect of a stored (eta, phi) trajectory: 4th-order finite
/// difference in time minus rhs_etaphi, measured in discrete L2 (the two
/// component residuals combined in quadrature).  Needs at least 5 slices.
std::vector<double> residual_original(const EtaPhiTrajectory& traj);

/// Monitor rows recomputed from stored states (used by the CLI).
struct MonitorRow {
  double t;
  double l2;
  double curl1, curl2;
  double conj_dev;
};
std::vector<MonitorRow> monitor_rows(const WTrajectory& traj);

}  // namespace bql
