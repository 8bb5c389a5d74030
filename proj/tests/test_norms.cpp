#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bql/norms.hpp"
#include "bql/symbol.hpp"
#include "bql/synth.hpp"
#include "oracles.hpp"

using namespace bql;

namespace {
const GridSpec kGrid{32, 32, 16.0, 16.0};

FieldTrack linear_track(const Field& w0, double T, int nt) {
  FieldTrack track;
  for (int i = 0; i <= nt; ++i) {
    const double t = T * i / nt;
    track.times.push_back(t);
    track.slices.push_back(propagator(w0, t, PropagatorSign::Plus));
  }
  return track;
}

}  // namespace

TEST_CASE("sobolev indices bookkeeping") {
  const SobolevIndices idx = SobolevIndices::from_s(1.6);
  CHECK(idx.m == doctest::Approx(0.6));
  CHECK(idx.delta == doctest::Approx(0.4));
  CHECK(idx.q_delta == doctest::Approx(3.0 / 1.4));
  CHECK_THROWS_AS(SobolevIndices::from_s(1.5), DomainError);
  CHECK_THROWS_AS(SobolevIndices::from_s(2.0), DomainError);
}

TEST_CASE("cube mesh needs integer box sides that divide the grid") {
  CHECK_NOTHROW(CubeMesh::from_grid(kGrid));
  const CubeMesh m = CubeMesh::from_grid(kGrid);
  CHECK(m.count() == 256);
  CHECK(m.px == 2);
  CHECK_THROWS_AS(CubeMesh::from_grid(GridSpec{32, 32, 16.5, 16.0}), StructuralError);
  CHECK_THROWS_AS(CubeMesh::from_grid(GridSpec{32, 32, 48.0, 16.0}), StructuralError);
}

TEST_CASE("sobolev norm: s = 0 is the L2 norm and it is monotone in s") {
  Field f = random_real_field(kGrid, 1, 9, 1.2);
  CHECK(oracle::rel_err(sobolev_norm(f, 0.0), f.l2()) <= 1e-13);
  CHECK(sobolev_norm(f, 0.7) <= sobolev_norm(f, 1.3));
  CHECK(sobolev_norm(f, 1.3) <= sobolev_norm(f, 1.9));
}

TEST_CASE("sobolev norm of a |k| = 1 unit-mass mode is 2^{s/2}") {
  // Box with Lx = 2 pi * 8 makes the mode (8, 0) sit exactly at |k| = 1.
  const GridSpec g{32, 32, 16.0 * std::numbers::pi, 16.0 * std::numbers::pi};
  Field f = single_mode(g, 8, 0, 1.0);
  f = scaled(f, 1.0 / f.l2());
  for (double s : {0.5, 1.0, 1.6}) {
    CHECK(oracle::rel_err(sobolev_norm(f, s), std::pow(2.0, 0.5 * s)) <= 1e-12);
    CHECK(oracle::rel_err(vs_norm(f, s), std::pow(2.0, 0.5 * (s - 1.0))) <= 1e-12);
  }
}

TEST_CASE("sobolev norm agrees with physical-space quadrature of (1-Lap)^{s/2} f") {
  Field f = random_real_field(kGrid, 2, 9, 1.2);
  for (double s : {0.8, 1.6}) {
    const Field g = apply_multiplier(f, symbols::sobolev_weight(s), Rep::Physical);
    CHECK(oracle::rel_err(sobolev_norm(f, s), oracle::l2_physical_direct(g)) <= 1e-10);
  }
}

TEST_CASE("vs norm: definition chain and the mean-zero precondition") {
  Field f = project_mean_zero(random_real_field(kGrid, 3, 9, 1.2));
  CHECK(oracle::rel_err(vs_norm(f, 1.6),
                        sobolev_norm(fractional_derivative(f, 1.0), 0.6)) <= 1e-13);
  Field fh = f.in_rep(Rep::Fourier);
  fh[0] = 1.0;
  CHECK_THROWS_AS(vs_norm(fh, 1.6), PreconditionError);
}

TEST_CASE("mixed norm: Fubini at q = p = 2, constants in time, dt scaling") {
  Field f = random_real_field(kGrid, 4, 9, 1.2);
  FieldTrack track = linear_track(f, 1.0, 20);

  const double a = mixed_norm(track, 2.0, 2.0, MixedOrder::TimeOuter);
  const double b = mixed_norm(track, 2.0, 2.0, MixedOrder::SpaceOuter);
  CHECK(oracle::rel_err(a, b) <= 1e-12);

  FieldTrack constant;
  for (int i = 0; i <= 10; ++i) {
    constant.times.push_back(0.1 * i);
    constant.slices.push_back(f);
  }
  CHECK(oracle::rel_err(mixed_norm(constant, kInf, kInf, MixedOrder::TimeOuter),
                        f.max_abs()) <= 1e-13);
  CHECK(oracle::rel_err(mixed_norm(constant, kInf, 2.0, MixedOrder::TimeOuter), f.l2()) <=
        1e-13);

  // One-slice spike: the L1_T trapezoid weight of an interior slice is dt.
  FieldTrack spike;
  Field zero(kGrid, Rep::Physical);
  for (int i = 0; i <= 10; ++i) {
    spike.times.push_back(0.1 * i);
    spike.slices.push_back(i == 5 ? f : zero);
  }
  CHECK(oracle::rel_err(mixed_norm(spike, 1.0, 2.0, MixedOrder::TimeOuter),
                        0.1 * f.l2()) <= 1e-12);

  CHECK_THROWS_AS(mixed_norm(track, 0.5, 2.0, MixedOrder::TimeOuter), DomainError);
  CHECK_THROWS_AS(mixed_norm(track, 2.0, 0.9, MixedOrder::TimeOuter), DomainError);
}

TEST_CASE("cube smoothing norm: crude Hoelder bound and T monotonicity") {
  Field f = random_real_field(kGrid, 5, 9, 1.2);
  FieldTrack track = linear_track(f, 1.0, 50);
  const double val = cube_smoothing_norm(track);

  double sup_d1 = 0.0;
  for (const Field& s : track.slices)
    sup_d1 = std::max(sup_d1, fractional_derivative(s, 1.0).l2());
  CHECK(val <= std::sqrt(1.0) * sup_d1 * (1.0 + 1e-12));

  FieldTrack longer = linear_track(f, 2.0, 100);
  CHECK(cube_smoothing_norm(longer) >= val * (1.0 - 1e-12));
}

TEST_CASE("cube smoothing of the linear flow obeys the spectral weight bound") {
  // ratio <= sup_k |k| / sqrt(3|k|^2 + 1) + tolerance < 3^{-1/2} + 5%.
  Field f = random_real_field(kGrid, 6, 5, 0.8);
  FieldTrack track = linear_track(f, 4.0, 400);
  const double ratio = cube_smoothing_norm(track) / f.l2();
  CHECK(ratio <= 1.05 / std::sqrt(3.0));
}

TEST_CASE("maximal norm: single-cube data at T = 0 and monotonicity in T") {
  Field bump = gaussian_bump(kGrid, 8.25, 8.25, 0.12, 1.0);
  FieldTrack single;
  single.times.push_back(0.0);
  single.slices.push_back(bump);
  const double v0 = maximal_norm(single);
  // Concentrated data: the value is essentially the sup in the host cube.
  CHECK(v0 >= 0.95 * bump.max_abs());
  CHECK(v0 <= std::sqrt(2.0) * bump.max_abs());

  Field f = random_real_field(kGrid, 7, 9, 1.2);
  const double m1 = maximal_norm(linear_track(f, 1.0, 50));
  const double m2 = maximal_norm(linear_track(f, 2.0, 100));
  CHECK(m2 >= m1 * (1.0 - 1e-12));
}

TEST_CASE("omega functionals: zero data, linear flow, homogeneity") {
  const SobolevIndices idx = SobolevIndices::from_s(1.6);
  Field zero(kGrid, Rep::Physical);
  FieldTrack ztrack = linear_track(zero, 0.5, 8);
  for (int j = 1; j <= 5; ++j) CHECK(omega(ztrack, idx, j) == 0.0);

  Field f = random_real_field(kGrid, 8, 7, 1.0);
  FieldTrack track = linear_track(f, 0.5, 16);
  CHECK(oracle::rel_err(omega(track, idx, 1), sobolev_norm(f, idx.s)) <= 1e-12);

  // Absolute homogeneity (exact for a power of two, 1e-14 otherwise).
  FieldTrack track2 = track, track3 = track;
  for (Field& s : track2.slices) s = scaled(s, 2.0);
  for (Field& s : track3.slices) s = scaled(s, -0.3);
  for (int j = 1; j <= 5; ++j) {
    const double base = omega(track, idx, j);
    CHECK(oracle::rel_err(omega(track2, idx, j), 2.0 * base) <= 1e-14);
    CHECK(oracle::rel_err(omega(track3, idx, j), 0.3 * base) <= 1e-13);
  }
  CHECK(omega_T(track, idx) >= omega(track, idx, 1));
  CHECK_THROWS_AS(omega(track, idx, 6), DomainError);
}

TEST_CASE("cube smoothing with one-cube data and tiny T is set by the host cube") {
  // Bump well inside the cube [8,9) x [8,9); at tiny T the accumulated
  // value reduces to T * (host-cube cell sum of |D^1 w0|^2), which the
  // oracle recomputes with plain loops.
  Field bump = gaussian_bump(kGrid, 8.5, 8.5, 0.15, 1.0);
  const double T = 1e-4;
  FieldTrack track = linear_track(bump, T, 2);
  const double got = cube_smoothing_norm(track);

  const Field d1 = fractional_derivative(bump, 1.0).in_rep(Rep::Physical);
  double best = 0.0;
  for (int cx = 0; cx < 16; ++cx)
    for (int cy = 0; cy < 16; ++cy) {
      double cell_sum = 0.0;
      for (int ix = cx * 2; ix < (cx + 1) * 2; ++ix)
        for (int iy = cy * 2; iy < (cy + 1) * 2; ++iy)
          cell_sum += std::norm(d1.at(ix, iy)) * kGrid.cell();
      best = std::max(best, cell_sum);
    }
  CHECK(oracle::rel_err(got, std::sqrt(T * best)) <= 0.05);
}

TEST_CASE("omega functionals are stable under grid refinement") {
  const SobolevIndices idx = SobolevIndices::from_s(1.6);
  // The sup norms are grid maxima, so the base grid must resolve the peaks
  // of the derivative-weighted slices for 2% reproducibility.
  auto track_on = [](const GridSpec& g) {
    Field bump = gaussian_bump(g, 8.0, 8.0, 1.5, 1.0);
    FieldTrack track;
    for (int i = 0; i <= 16; ++i) {
      const double t = i / 16.0;
      track.times.push_back(t);
      track.slices.push_back(propagator(bump, t, PropagatorSign::Plus));
    }
    return track;
  };
  const FieldTrack coarse = track_on(GridSpec{128, 128, 16.0, 16.0});
  const FieldTrack fine = track_on(GridSpec{256, 256, 16.0, 16.0});
  for (int j = 1; j <= 5; ++j) {
    const double a = omega(coarse, idx, j);
    const double b = omega(fine, idx, j);
    CHECK(std::abs(b - a) / a <= 0.02);
  }
}

TEST_CASE("norm report validates finiteness") {
  NormReport rep;
  rep.push("H^s", 1.0);
  CHECK_NOTHROW(rep.validate());
  rep.push("bad", -1.0);
  CHECK_THROWS_AS(rep.validate(), StructuralError);
}
