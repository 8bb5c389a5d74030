#include "bql/norms.hpp"

#include <algorithm>
#include <cmath>

#include "bql/symbol.hpp"

namespace bql {

SobolevIndices SobolevIndices::from_s(double s) {
  SobolevIndices idx;
  idx.s = s;
  idx.m = s - 1.0;
  idx.delta = 2.0 - s;
  idx.q_delta = 3.0 / (1.0 + idx.delta);
  idx.validate();
  return idx;
}

void SobolevIndices::validate() const {
  if (!(s > 1.5 && s < 2.0))
    throw DomainError("SobolevIndices: need 3/2 < s < 2");
  if (std::abs(m - (s - 1.0)) > 1e-15 || std::abs(delta - (2.0 - s)) > 1e-15 ||
      std::abs(q_delta - 3.0 / (1.0 + delta)) > 1e-12)
    throw StructuralError("SobolevIndices: inconsistent derived indices");
}

CubeMesh CubeMesh::from_grid(const GridSpec& g) {
  g.validate();
  const double rx = std::round(g.Lx), ry = std::round(g.Ly);
  if (std::abs(g.Lx - rx) > 1e-12 || std::abs(g.Ly - ry) > 1e-12)
    throw StructuralError("CubeMesh: box sides must be integers for the unit-cube mesh");
  CubeMesh m;
  m.cubes_x = static_cast<int>(rx);
  m.cubes_y = static_cast<int>(ry);
  if (m.cubes_x < 1 || m.cubes_y < 1 || g.nx % m.cubes_x != 0 || g.ny % m.cubes_y != 0)
    throw StructuralError("CubeMesh: grid does not tile into unit cubes");
  m.px = g.nx / m.cubes_x;
  m.py = g.ny / m.cubes_y;
  return m;
}

void FieldTrack::validate() const {
  if (times.size() != slices.size())
    throw StructuralError("FieldTrack: times/slices size mismatch");
  for (std::size_t i = 0; i + 1 < times.size(); ++i)
    if (!(times[i + 1] > times[i]))
      throw StructuralError("FieldTrack: times must be strictly increasing");
  for (std::size_t i = 1; i < slices.size(); ++i)
    require_same_layout(slices[i].grid(), slices[0].grid(), "FieldTrack");
}

CubeL2Accum::CubeL2Accum(const GridSpec& g, const CubeMesh& mesh)
    : grid_(g), mesh_(mesh), prev_(mesh.count(), 0.0), integral_(mesh.count(), 0.0) {}

void CubeL2Accum::add_slice(const Field& phys, double t) {
  std::vector<double> cur(mesh_.count(), 0.0);
  const double cell = grid_.cell();
  for (int ix = 0; ix < grid_.nx; ++ix)
    for (int iy = 0; iy < grid_.ny; ++iy)
      cur[mesh_.cube_of(ix, iy)] += cell * std::norm(phys.at(ix, iy));
  if (has_prev_) {
    const double dt = t - prev_t_;
    for (int c = 0; c < mesh_.count(); ++c)
      integral_[c] += 0.5 * dt * (prev_[c] + cur[c]);
  }
  prev_ = std::move(cur);
  prev_t_ = t;
  has_prev_ = true;
}

double CubeL2Accum::value() const {
  double m = 0.0;
  for (double v : integral_) m = std::max(m, v);
  return std::sqrt(m);
}

MaximalAccum::MaximalAccum(const GridSpec& g, const CubeMesh& mesh)
    : grid_(g), mesh_(mesh), sup_(mesh.count(), 0.0) {}

void MaximalAccum::add_slice(const Field& phys) {
  for (int ix = 0; ix < grid_.nx; ++ix)
    for (int iy = 0; iy < grid_.ny; ++iy) {
      double& s = sup_[mesh_.cube_of(ix, iy)];
      s = std::max(s, std::abs(phys.at(ix, iy)));
    }
}

double MaximalAccum::value() const {
  std::vector<double> sq(sup_.size());
  for (std::size_t i = 0; i < sup_.size(); ++i) sq[i] = sup_[i] * sup_[i];
  return std::sqrt(kernels::pairwise_sum(sq.data(), sq.size()));
}

double sobolev_norm(const Field& f, double s) {
  const Field fh = f.in_rep(Rep::Fourier);
  const GridSpec& g = fh.grid();
  std::vector<double> w(g.size());
  for (int ix = 0; ix < g.nx; ++ix) {
    const double kx = g.kx(ix);
    for (int iy = 0; iy < g.ny; ++iy) {
      const double ky = g.ky(iy);
      w[g.index(ix, iy)] = std::pow(1.0 + kx * kx + ky * ky, s);
    }
  }
  const double sum = kernels::sum_weighted_abs2(w.data(), fh.data(), g.size(),
                                                kernels::default_exec());
  return std::sqrt(g.cell() * sum);
}

double vs_norm(const Field& f, double s) {
  require_mean_zero(f, "vs_norm");
  return sobolev_norm(fractional_derivative(f, 1.0), s - 1.0);
}

double spatial_lp(const Field& phys, double p) {
  if (p == kInf) return phys.max_abs();
  const GridSpec& g = phys.grid();
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    v[i] = std::pow(std::abs(phys[i]), p);
  const double sum = kernels::pairwise_sum(v.data(), v.size());
  return std::pow(g.cell() * sum, 1.0 / p);
}

namespace {

/// (sum_i w_i g_i^q)^{1/q} with trapezoid weights, or max for q = inf.
double time_lq(const std::vector<double>& times, const std::vector<double>& g,
               double q) {
  if (q == kInf) return *std::max_element(g.begin(), g.end());
  if (times.size() == 1) return 0.0;  // zero-length time interval
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    const double dt = times[i + 1] - times[i];
    acc += 0.5 * dt * (std::pow(g[i], q) + std::pow(g[i + 1], q));
  }
  return std::pow(acc, 1.0 / q);
}

}  // namespace

double mixed_norm(const FieldTrack& track, double q, double p, MixedOrder order) {
  if (!(q >= 1.0) || !(p >= 1.0))
    throw DomainError("mixed_norm: q and p must be >= 1 (or infinity)");
  track.validate();
  if (track.slices.empty()) return 0.0;
  const GridSpec& g = track.slices[0].grid();

  if (order == MixedOrder::TimeOuter) {
    std::vector<double> per_slice(track.slices.size());
    for (std::size_t i = 0; i < track.slices.size(); ++i)
      per_slice[i] = spatial_lp(track.slices[i].in_rep(Rep::Physical), p);
    return time_lq(track.times, per_slice, q);
  }

  // SpaceOuter: per-point time norm first, then the spatial p norm.
  const std::size_t n = g.size();
  std::vector<double> point(n, 0.0);
  if (q == kInf) {
    for (const Field& s : track.slices) {
      const Field ph = s.in_rep(Rep::Physical);
      for (std::size_t i = 0; i < n; ++i)
        point[i] = std::max(point[i], std::abs(ph[i]));
    }
  } else {
    std::vector<Field> phys;
    phys.reserve(track.slices.size());
    for (const Field& s : track.slices) phys.push_back(s.in_rep(Rep::Physical));
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t t = 0; t + 1 < phys.size(); ++t) {
        const double dt = track.times[t + 1] - track.times[t];
        acc += 0.5 * dt *
               (std::pow(std::abs(phys[t][i]), q) + std::pow(std::abs(phys[t + 1][i]), q));
      }
      point[i] = std::pow(acc, 1.0 / q);
    }
  }
  if (p == kInf) return *std::max_element(point.begin(), point.end());
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::pow(point[i], p);
  return std::pow(g.cell() * kernels::pairwise_sum(v.data(), n), 1.0 / p);
}

double cube_smoothing_norm(const FieldTrack& track) {
  track.validate();
  if (track.slices.empty()) return 0.0;
  const GridSpec& g = track.slices[0].grid();
  const CubeMesh mesh = CubeMesh::from_grid(g);
  CubeL2Accum accum(g, mesh);
  for (std::size_t i = 0; i < track.slices.size(); ++i)
    accum.add_slice(fractional_derivative(track.slices[i], 1.0).in_rep(Rep::Physical),
                    track.times[i]);
  return accum.value();
}

double maximal_norm(const FieldTrack& track) {
  track.validate();
  if (track.slices.empty()) return 0.0;
  const GridSpec& g = track.slices[0].grid();
  const CubeMesh mesh = CubeMesh::from_grid(g);
  MaximalAccum accum(g, mesh);
  for (const Field& s : track.slices) accum.add_slice(s.in_rep(Rep::Physical));
  return accum.value();
}

namespace {

FieldTrack apply_track(const FieldTrack& track, const Symbol& sym) {
  FieldTrack out;
  out.times = track.times;
  out.slices.reserve(track.slices.size());
  for (const Field& s : track.slices)
    out.slices.push_back(apply_multiplier(s, sym, Rep::Physical));
  return out;
}

Symbol compose(const Symbol& a, const Symbol& b) {
  return {a.label + "*" + b.label, [a, b](double kx, double ky) {
            return a.eval(kx, ky) * b.eval(kx, ky);
          }};
}

double cube_l2_sup(const FieldTrack& track, const Symbol& sym) {
  const GridSpec& g = track.slices[0].grid();
  const CubeMesh mesh = CubeMesh::from_grid(g);
  CubeL2Accum accum(g, mesh);
  for (std::size_t i = 0; i < track.slices.size(); ++i)
    accum.add_slice(apply_multiplier(track.slices[i], sym, Rep::Physical),
                    track.times[i]);
  return accum.value();
}

double maximal_of(const FieldTrack& track, const Symbol& sym) {
  const GridSpec& g = track.slices[0].grid();
  const CubeMesh mesh = CubeMesh::from_grid(g);
  MaximalAccum accum(g, mesh);
  for (const Field& s : track.slices)
    accum.add_slice(apply_multiplier(s, sym, Rep::Physical));
  return accum.value();
}

}  // namespace

double omega(const FieldTrack& track, const SobolevIndices& idx, int j) {
  idx.validate();
  track.validate();
  if (track.slices.empty()) return 0.0;
  using namespace symbols;
  const Symbol id = identity();
  const Symbol dx1 = derivative(1), dx2 = derivative(2);
  const Symbol D1 = fractional_derivative(1.0);

  switch (j) {
    case 1: {
      double sup = 0.0;
      for (const Field& s : track.slices)
        sup = std::max(sup, sobolev_norm(s, idx.s));
      return sup;
    }
    case 2: {
      // sum_{|b|<=1} ||d^b f|| + ||D^1 f|| + the R_l copies, all L^3_T L^inf_x.
      double acc = 0.0;
      for (const Symbol& base : {id, dx1, dx2, D1})
        acc += mixed_norm(apply_track(track, base), 3.0, kInf, MixedOrder::TimeOuter);
      for (int l = 1; l <= 2; ++l)
        for (const Symbol& base : {id, dx1, dx2, D1})
          acc += mixed_norm(apply_track(track, compose(base, riesz(l))), 3.0, kInf,
                            MixedOrder::TimeOuter);
      return acc;
    }
    case 3: {
      double acc = 0.0;
      for (const Symbol& d : {dx1, dx2})
        acc += mixed_norm(apply_track(track, compose(D1, d)), idx.q_delta, kInf,
                          MixedOrder::TimeOuter);
      for (int l = 1; l <= 2; ++l)
        for (const Symbol& d : {dx1, dx2})
          acc += mixed_norm(apply_track(track, compose(compose(D1, d), riesz(l))),
                            idx.q_delta, kInf, MixedOrder::TimeOuter);
      return acc;
    }
    case 4: {
      const Symbol D1m = fractional_derivative(1.0 + idx.m);
      double acc = 0.0;
      for (const Symbol& d : {dx1, dx2}) acc += cube_l2_sup(track, compose(d, D1m));
      for (int l = 1; l <= 2; ++l)
        for (const Symbol& d : {dx1, dx2})
          acc += cube_l2_sup(track, compose(compose(d, D1m), riesz(l)));
      return acc;
    }
    case 5: {
      double acc = maximal_of(track, id);
      for (int l = 1; l <= 2; ++l) acc += maximal_of(track, riesz(l));
      return acc;
    }
    default:
      throw DomainError("omega: j must be in 1..5");
  }
}

double omega_T(const FieldTrack& track, const SobolevIndices& idx) {
  double m = 0.0;
  for (int j = 1; j <= 5; ++j) m = std::max(m, omega(track, idx, j));
  return m;
}

void NormReport::push(const std::string& name, double v) {
  values.emplace_back(name, v);
}

void NormReport::validate() const {
  for (const auto& [name, v] : values)
    if (!std::isfinite(v) || v < 0.0)
      throw StructuralError("NormReport: value '" + name + "' is not finite and >= 0");
}

}  // namespace bql
