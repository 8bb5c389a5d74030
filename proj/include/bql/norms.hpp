#pragma once

#include <limits>
#include <string>
#include <vector>

#include "bql/field.hpp"

namespace bql {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Regularity bookkeeping for the contraction machinery: s in (3/2, 2),
/// m = s - 1 in (1/2, 1), delta = 1 - m = 2 - s, q_delta = 3 / (1 + delta).
struct SobolevIndices {
  double s = 0.0;
  double m = 0.0;
  double delta = 0.0;
  double q_delta = 0.0;

  static SobolevIndices from_s(double s);
  void validate() const;
};

/// Non-overlapping unit cubes tiling the box; requires integer box sides
/// divisible into the grid.
struct CubeMesh {
  int cubes_x = 0, cubes_y = 0;  // = Lx, Ly
  int px = 0, py = 0;            // grid points per cube per axis

  static CubeMesh from_grid(const GridSpec& g);
  int count() const { return cubes_x * cubes_y; }
  int cube_of(int ix, int iy) const { return (ix / px) * cubes_y + iy / py; }
};

/// Time-indexed scalar field slices (uniform grid of stored times).
struct FieldTrack {
  std::vector<double> times;
  std::vector<Field> slices;

  void validate() const;
  double T() const { return times.empty() ? 0.0 : times.back(); }
  double dt() const { return times.size() < 2 ? 0.0 : times[1] - times[0]; }
};

/// Streaming sup_cube integral_{Q x [0,T]} |f|^2 (time trapezoid, Riemann
/// cells in space).  Feed physical-representation slices in time order.
class CubeL2Accum {
 public:
  CubeL2Accum(const GridSpec& g, const CubeMesh& mesh);
  void add_slice(const Field& phys, double t);
  /// sup over cubes of the accumulated space-time L2 norm.
  double value() const;

 private:
  GridSpec grid_;
  CubeMesh mesh_;
  bool has_prev_ = false;
  double prev_t_ = 0.0;
  std::vector<double> prev_, integral_;
};

/// Streaming per-cube sup over time and space of |f|; value is the l2 sum
/// over cubes of the sups.
class MaximalAccum {
 public:
  MaximalAccum(const GridSpec& g, const CubeMesh& mesh);
  void add_slice(const Field& phys);
  double value() const;

 private:
  GridSpec grid_;
  CubeMesh mesh_;
  std::vector<double> sup_;
};

/// H^s norm: ( sum (1+|k|^2)^s |f^(k)|^2 cell )^{1/2}.
double sobolev_norm(const Field& f, double s);

/// V^s norm: ||sqrt(-Lap) f||_{H^{s-1}}.  Input must be mean zero.
double vs_norm(const Field& f, double s);

enum class MixedOrder { TimeOuter, SpaceOuter };

/// Mixed L^q_T L^p_x norm (TimeOuter) or L^p_x L^q_T (SpaceOuter); time by
/// trapezoid on the stored slices, space by Riemann cell sums, infinity as
/// max.  q, p >= 1 (or kInf).
double mixed_norm(const FieldTrack& track, double q, double p, MixedOrder order);

/// sup_cube ( int_Q int_0^T |D^1 f|^2 )^{1/2} over the stored slices.
double cube_smoothing_norm(const FieldTrack& track);

/// ( sum_cube sup_{t,x in Q} |f|^2 )^{1/2} over the stored slices.
double maximal_norm(const FieldTrack& track);

/// The five contraction functionals and their max.  j in 1..5.
double omega(const FieldTrack& track, const SobolevIndices& idx, int j);
double omega_T(const FieldTrack& track, const SobolevIndices& idx);

/// Named scalar diagnostics with provenance.
struct NormReport {
  std::vector<std::pair<std::string, double>> values;
  GridSpec grid;
  double T = 0.0;
  double dt = 0.0;

  void push(const std::string& name, double v);
  void validate() const;  // all values finite and >= 0
};

/// Spatial L^p Riemann norm of a physical-representation slice (p >= 1 or
/// kInf); shared by the mixed norms and the estimate ratios.
double spatial_lp(const Field& phys, double p);

}  // namespace bql
