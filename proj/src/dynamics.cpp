#include "bql/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "bql/fft.hpp"
#include "bql/symbol.hpp"

namespace bql {

namespace {

using kernels::Exec;

inline Exec ex() { return kernels::default_exec(); }

using Spec4 = std::array<std::vector<cplx>, 4>;

/// Per-grid multiplier tables for the hot paths.
struct Tables {
  GridSpec g;
  std::size_t n;
  std::vector<cplx> r1, r2;    // Riesz multipliers
  std::vector<cplx> d1, d2;    // i k_l
  std::vector<double> phi;     // |k|^3 + |k|
  std::vector<double> mask;    // dealias mask (1 keep / 0 drop)

  explicit Tables(const GridSpec& grid) : g(grid), n(grid.size()) {
    r1.resize(n);
    r2.resize(n);
    d1.resize(n);
    d2.resize(n);
    phi.resize(n);
    mask.resize(n);
    for (int ix = 0; ix < g.nx; ++ix) {
      const double kx = g.kx(ix);
      for (int iy = 0; iy < g.ny; ++iy) {
        const double ky = g.ky(iy);
        const std::size_t i = g.index(ix, iy);
        const double r = std::hypot(kx, ky);
        r1[i] = r == 0.0 ? cplx{} : cplx(0.0, -kx / r);
        r2[i] = r == 0.0 ? cplx{} : cplx(0.0, -ky / r);
        d1[i] = cplx(0.0, kx);
        d2[i] = cplx(0.0, ky);
        phi[i] = r * r * r + r;
        mask[i] = g.keep_mode(ix, iy) ? 1.0 : 0.0;
      }
    }
  }
};

void to_phys(const GridSpec& g, const std::vector<cplx>& in, std::vector<cplx>& out) {
  out.resize(in.size());
  fft::backward(g, in.data(), out.data());
  const cplx s = 1.0 / std::sqrt(static_cast<double>(g.size()));
  kernels::scale(out.data(), s, out.data(), out.size(), ex());
}

void to_four(const GridSpec& g, const std::vector<cplx>& in, std::vector<cplx>& out) {
  out.resize(in.size());
  fft::forward(g, in.data(), out.data());
  const cplx s = 1.0 / std::sqrt(static_cast<double>(g.size()));
  kernels::scale(out.data(), s, out.data(), out.size(), ex());
}

void apply_mask(const Tables& tb, std::vector<cplx>& a) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= tb.mask[i];
}

/// Scratch buffers reused across RHS evaluations.
struct Scratch {
  std::vector<cplx> gh, h1h, h2h;        // spectral combinations
  std::vector<cplx> gp, h1p, h2p;        // physical factors
  std::vector<cplx> L1, L2, L3;          // physical then spectral products
  std::vector<cplx> K, P, M;
  void resize(std::size_t n) {
    for (auto* v : {&gh, &h1h, &h2h, &gp, &h1p, &h2p, &L1, &L2, &L3, &K, &P, &M})
      v->resize(n);
  }
};

/// F(w) for the w-system, spectral in / spectral out.
void rhs_w_spectral(const Tables& tb, const Spec4& w, Spec4& F, Scratch& sc,
                    bool nonlinear) {
  const std::size_t n = tb.n;
  for (auto& f : F) {
    f.assign(n, cplx{});
  }
  if (!nonlinear) return;
  sc.resize(n);
  // g^ = R1 w1 + R2 w2 - R1 w3 - R2 w4 ; h_l^ = w_l + w_{l+2}
  for (std::size_t i = 0; i < n; ++i) {
    sc.gh[i] = tb.r1[i] * (w[0][i] - w[2][i]) + tb.r2[i] * (w[1][i] - w[3][i]);
    sc.h1h[i] = w[0][i] + w[2][i];
    sc.h2h[i] = w[1][i] + w[3][i];
  }
  to_phys(tb.g, sc.gh, sc.gp);
  to_phys(tb.g, sc.h1h, sc.h1p);
  to_phys(tb.g, sc.h2h, sc.h2p);
  for (std::size_t i = 0; i < n; ++i) {
    sc.L1[i] = sc.gp[i] * sc.h1p[i];
    sc.L2[i] = sc.gp[i] * sc.h2p[i];
    sc.L3[i] = sc.h1p[i] * sc.h1p[i] + sc.h2p[i] * sc.h2p[i];
  }
  to_four(tb.g, sc.L1, sc.K);   // K temporarily holds L1^
  to_four(tb.g, sc.L2, sc.P);   // P temporarily holds L2^
  to_four(tb.g, sc.L3, sc.M);   // M temporarily holds L3^
  apply_mask(tb, sc.K);
  apply_mask(tb, sc.P);
  apply_mask(tb, sc.M);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx K = tb.r1[i] * sc.K[i] + tb.r2[i] * sc.P[i];
    const cplx L3 = sc.M[i];
    const cplx plus = 0.5 * K - 0.25 * L3;
    const cplx minus = -0.5 * K - 0.25 * L3;
    F[0][i] = tb.d1[i] * plus;
    F[1][i] = tb.d2[i] * plus;
    F[2][i] = tb.d1[i] * minus;
    F[3][i] = tb.d2[i] * minus;
  }
}

/// Half/full-step linear propagators per component family.
struct StepTables {
  std::vector<cplx> eh_p, ef_p;  // components 1,2 (U+): e^{-i phi dt/2}, dt
  std::vector<cplx> eh_m, ef_m;  // components 3,4 (U-)

  StepTables(const Tables& tb, double dt) {
    const std::size_t n = tb.n;
    eh_p.resize(n);
    ef_p.resize(n);
    eh_m.resize(n);
    ef_m.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double th_h = tb.phi[i] * (0.5 * dt);
      const double th_f = tb.phi[i] * dt;
      eh_p[i] = cplx(std::cos(th_h), -std::sin(th_h));
      ef_p[i] = cplx(std::cos(th_f), -std::sin(th_f));
      eh_m[i] = std::conj(eh_p[i]);
      ef_m[i] = std::conj(ef_p[i]);
    }
  }
  const std::vector<cplx>& half(int comp) const { return comp < 2 ? eh_p : eh_m; }
  const std::vector<cplx>& full(int comp) const { return comp < 2 ? ef_p : ef_m; }
};

void step_spectral(const Tables& tb, const StepTables& st, Spec4& w, double dt,
                   Scratch& sc, bool nonlinear) {
  const std::size_t n = tb.n;
  Spec4 k1, k2, k3, k4, u;
  rhs_w_spectral(tb, w, k1, sc, nonlinear);
  for (int c = 0; c < 4; ++c) {
    u[c].resize(n);
    const auto& E = st.half(c);
    for (std::size_t i = 0; i < n; ++i)
      u[c][i] = E[i] * (w[c][i] + 0.5 * dt * k1[c][i]);
  }
  rhs_w_spectral(tb, u, k2, sc, nonlinear);
  for (int c = 0; c < 4; ++c) {
    const auto& E = st.half(c);
    for (std::size_t i = 0; i < n; ++i)
      u[c][i] = E[i] * w[c][i] + 0.5 * dt * k2[c][i];
  }
  rhs_w_spectral(tb, u, k3, sc, nonlinear);
  for (int c = 0; c < 4; ++c) {
    const auto& E = st.half(c);
    const auto& E2 = st.full(c);
    for (std::size_t i = 0; i < n; ++i)
      u[c][i] = E2[i] * w[c][i] + dt * E[i] * k3[c][i];
  }
  rhs_w_spectral(tb, u, k4, sc, nonlinear);
  for (int c = 0; c < 4; ++c) {
    const auto& E = st.half(c);
    const auto& E2 = st.full(c);
    for (std::size_t i = 0; i < n; ++i)
      w[c][i] = E2[i] * w[c][i] +
                (dt / 6.0) * (E2[i] * k1[c][i] + 2.0 * E[i] * (k2[c][i] + k3[c][i]) +
                              k4[c][i]);
  }
}

Spec4 state_to_spec(const StateW& s) {
  const StateW sf = in_rep(s, Rep::Fourier);
  Spec4 w;
  const auto fields = sf.fields();
  for (int c = 0; c < 4; ++c)
    w[c].assign(fields[c]->data(), fields[c]->data() + fields[c]->size());
  return w;
}

StateW spec_to_state(const GridSpec& g, const Spec4& w) {
  StateW s{Field(g, Rep::Fourier), Field(g, Rep::Fourier), Field(g, Rep::Fourier),
           Field(g, Rep::Fourier)};
  const auto fields = s.fields();
  for (int c = 0; c < 4; ++c)
    std::copy(w[c].begin(), w[c].end(), fields[c]->data());
  return s;
}

bool spec_finite(const Spec4& w) {
  for (const auto& c : w) {
    const double s = kernels::sum_abs2(c.data(), c.size(), ex());
    if (!std::isfinite(s)) return false;
  }
  return true;
}

}  // namespace

std::pair<Field, Field> nonlinearity_uv(const StateUV& s) {
  require_same_layout(s.u.grid(), s.v.grid(), "nonlinearity_uv");
  require_mean_zero(s.u, "nonlinearity_uv(u)");
  require_mean_zero(s.v, "nonlinearity_uv(v)");
  const GridSpec& g = s.u.grid();
  const Field uh = s.u.in_rep(Rep::Fourier);
  const Field vh = s.v.in_rep(Rep::Fourier);
  const Field sum = add(uh, vh);
  const Field diff = sub(uh, vh);

  const Field gp = fractional_derivative(diff, 1.0).to_physical();
  const Field h1 = derivative(sum, 1).to_physical();
  const Field h2 = derivative(sum, 2).to_physical();

  Field gh1(g, Rep::Physical), gh2(g, Rep::Physical), hh(g, Rep::Physical);
  kernels::mul(gh1.data(), gp.data(), h1.data(), g.size(), ex());
  kernels::mul(gh2.data(), gp.data(), h2.data(), g.size(), ex());
  for (std::size_t i = 0; i < g.size(); ++i)
    hh[i] = h1[i] * h1[i] + h2[i] * h2[i];

  const Field G1 = dealias(gh1.to_fourier());
  const Field G2 = dealias(gh2.to_fourier());
  const Field H = dealias(hh.to_fourier());

  // (1/sqrt(-Lap)) d_l = -R_l removes the k=0 singularity exactly.
  Field n1 = scaled(add(riesz(G1, 1), riesz(G2, 2)), -0.5);
  Field n2 = scaled(H, 0.25);
  return {std::move(n1), std::move(n2)};
}

std::array<Field, 4> rhs_w(const StateW& s, const RhsOptions& opts) {
  const GridSpec& g = s.grid();
  Tables tb(g);
  Scratch sc;
  Spec4 w = state_to_spec(s);
  Spec4 F;
  rhs_w_spectral(tb, w, F, sc, opts.nonlinearity);
  StateW out = spec_to_state(g, F);
  return {std::move(out.w1), std::move(out.w2), std::move(out.w3), std::move(out.w4)};
}

std::pair<Field, Field> rhs_etaphi(const StateEtaPhi& s) {
  require_same_layout(s.eta.grid(), s.phi.grid(), "rhs_etaphi");
  const GridSpec& g = s.eta.grid();
  const Field eh = s.eta.in_rep(Rep::Fourier);
  const Field ph = s.phi.in_rep(Rep::Fourier);

  const Field eta_p = eh.to_physical();
  const Field px1 = derivative(ph, 1).to_physical();
  const Field px2 = derivative(ph, 2).to_physical();

  Field a1(g, Rep::Physical), a2(g, Rep::Physical), q(g, Rep::Physical);
  for (std::size_t i = 0; i < g.size(); ++i) {
    a1[i] = eta_p[i] * px1[i];
    a2[i] = eta_p[i] * px2[i];
    q[i] = px1[i] * px1[i] + px2[i] * px2[i];
  }
  const Field A1 = dealias(a1.to_fourier());
  const Field A2 = dealias(a2.to_fourier());
  const Field Q = dealias(q.to_fourier());

  Field eta_t(g, Rep::Fourier), phi_t(g, Rep::Fourier);
  for (int ix = 0; ix < g.nx; ++ix) {
    const double kx = g.kx(ix);
    for (int iy = 0; iy < g.ny; ++iy) {
      const double ky = g.ky(iy);
      const double r2 = kx * kx + ky * ky;
      const std::size_t i = g.index(ix, iy);
      eta_t[i] = r2 * (1.0 + r2) * ph[i] -
                 (cplx(0.0, kx) * A1[i] + cplx(0.0, ky) * A2[i]);
      phi_t[i] = -(1.0 + r2) * eh[i] - 0.5 * Q[i];
    }
  }
  return {std::move(eta_t), std::move(phi_t)};
}

StateW step_ifrk4(const StateW& s, double dt, const RhsOptions& opts) {
  if (!(dt > 0.0)) throw PreconditionError("step_ifrk4: dt must be positive");
  const GridSpec& g = s.grid();
  Tables tb(g);
  StepTables st(tb, dt);
  Scratch sc;
  Spec4 w = state_to_spec(s);
  step_spectral(tb, st, w, dt, sc, opts.nonlinearity);
  return spec_to_state(g, w);
}

WTrajectory simulate(const StateW& w0, double T, double dt,
                     const SimulateOptions& opts) {
  if (!(T > 0.0) || !(dt > 0.0))
    throw PreconditionError("simulate: T and dt must be positive");
  const double steps_real = T / dt;
  const long nsteps = std::lround(steps_real);
  if (nsteps < 1 || std::abs(nsteps * dt - T) > 1e-9 * T)
    throw PreconditionError("simulate: dt must divide T");
  const double closed = closedness_residual(w0);
  if (closed > opts.closedness_tol) {
    std::ostringstream msg;
    msg << "simulate: initial state closedness residual " << closed
        << " exceeds tolerance " << opts.closedness_tol;
    throw DefectError(msg.str(), closed);
  }
  const GridSpec& g = w0.grid();
  Tables tb(g);
  StepTables st(tb, dt);
  Scratch sc;
  Spec4 w = state_to_spec(w0);

  WTrajectory traj;
  traj.grid = g;
  traj.meta = {"if-rk4", dt, g.dealias_fraction};
  traj.times.push_back(0.0);
  traj.states.push_back(spec_to_state(g, w));

  for (long step = 1; step <= nsteps; ++step) {
    step_spectral(tb, st, w, dt, sc, opts.nonlinearity);
    if (!spec_finite(w)) {
      std::ostringstream msg;
      msg << "simulate: non-finite state at t = " << step * dt
          << " (last healthy t = " << (step - 1) * dt
          << "); blow-up or instability";
      throw NumericalError(msg.str());
    }
    if (step % opts.save_every == 0 || step == nsteps) {
      traj.times.push_back(step * dt);
      traj.states.push_back(spec_to_state(g, w));
    }
  }
  return traj;
}

std::pair<WTrajectory, PicardReport> picard_solve(const StateW& w0, double T,
                                                  int nt, int max_iter,
                                                  double tol) {
  if (!(T > 0.0)) throw PreconditionError("picard_solve: T must be positive");
  if (nt < 2 || nt % 2 != 0)
    throw PreconditionError("picard_solve: nt must be even and >= 2");
  if (max_iter < 1) throw PreconditionError("picard_solve: max_iter must be >= 1");
  if (!(tol > 0.0)) throw PreconditionError("picard_solve: tol must be positive");
  const GridSpec& g = w0.grid();
  const double dt = T / nt;
  Tables tb(g);
  Scratch sc;
  const Spec4 w0s = state_to_spec(w0);
  const std::size_t n = tb.n;
  const int ns = nt + 1;

  // U^{sign}(t) applied in place: multiply by e^{-sign i phi t}.
  auto propagate = [&](Spec4& s, double t) {
    for (int c = 0; c < 4; ++c) {
      const double sg = c < 2 ? 1.0 : -1.0;
      auto& a = s[c];
      for (std::size_t i = 0; i < n; ++i) {
        const double th = -sg * tb.phi[i] * t;
        a[i] *= cplx(std::cos(th), std::sin(th));
      }
    }
  };

  // Composite Simpson weights for the prefix integral over [0, t_i]; odd
  // prefixes get a 3-point right-edge panel to keep 4th order.
  auto prefix_weights = [&](int i) {
    std::vector<double> c(static_cast<std::size_t>(i) + 1, 0.0);
    if (i == 1) {
      c[0] = 5.0 * dt / 12.0;
      c[1] = 8.0 * dt / 12.0;
      // weight on node 2 handled by caller (needs slice beyond the prefix)
      return c;
    }
    const int even_end = i % 2 == 0 ? i : i - 1;
    for (int j = 0; j < even_end; j += 2) {
      c[j] += dt / 3.0;
      c[j + 1] += 4.0 * dt / 3.0;
      c[j + 2] += dt / 3.0;
    }
    if (i % 2 == 1) {
      c[i - 2] += -dt / 12.0;
      c[i - 1] += 8.0 * dt / 12.0;
      c[i] += 5.0 * dt / 12.0;
    }
    return c;
  };

  // Iterate storage: current trajectory (spectral), candidate, and
  // G_j = U(-t_j) F(w_j).
  std::vector<Spec4> cur(ns), next(ns), G(ns);

  // Initial iterate: linear flow of w0.
  for (int i = 0; i < ns; ++i) {
    cur[i] = w0s;
    propagate(cur[i], i * dt);
  }

  PicardReport report;
  for (int iter = 1; iter <= max_iter; ++iter) {
    for (int i = 0; i < ns; ++i) {
      rhs_w_spectral(tb, cur[i], G[i], sc, true);
      propagate(G[i], -i * dt);
    }
    // next_i = U(t_i) [ w0 + sum_j c_j G_j ]
    for (int i = 0; i < ns; ++i) {
      next[i] = w0s;
      if (i >= 1) {
        auto c = prefix_weights(i);
        for (int j = 0; j <= i; ++j) {
          if (j < static_cast<int>(c.size()) && c[j] != 0.0)
            for (int comp = 0; comp < 4; ++comp)
              kernels::axpy_acc(next[i][comp].data(), c[j], G[j][comp].data(), n, ex());
        }
        if (i == 1)  // third node of the i=1 quadratic rule
          for (int comp = 0; comp < 4; ++comp)
            kernels::axpy_acc(next[i][comp].data(), -dt / 12.0, G[2][comp].data(), n,
                              ex());
      }
      propagate(next[i], i * dt);
    }
    if (!spec_finite(next[nt]))
      throw NumericalError("picard_solve: iterate became non-finite");

    double diff = 0.0;
    for (int i = 0; i < ns; ++i) {
      double d2 = 0.0;
      for (int comp = 0; comp < 4; ++comp) {
        std::vector<cplx> tmp(n);
        kernels::axpy(tmp.data(), -1.0, cur[i][comp].data(), next[i][comp].data(), n,
                      ex());
        d2 += g.cell() * kernels::sum_abs2(tmp.data(), n, ex());
      }
      diff = std::max(diff, std::sqrt(d2));
    }
    report.iterate_count = iter;
    report.successive_diffs.push_back(diff);
    if (report.successive_diffs.size() >= 2) {
      const auto& d = report.successive_diffs;
      report.contraction_ratio_estimate = d[d.size() - 1] / d[d.size() - 2];
    }
    std::swap(cur, next);
    if (diff <= tol) {
      report.converged = true;
      break;
    }
  }
  if (!report.converged) {
    std::ostringstream msg;
    msg << "picard_solve: no convergence after " << max_iter
        << " iterations (last diff " << report.successive_diffs.back()
        << ", tol " << tol << "); T is likely too large for the contraction";
    throw PicardNonConvergence(msg.str(), report);
  }

  WTrajectory traj;
  traj.grid = g;
  traj.meta = {"picard-simpson", dt, g.dealias_fraction};
  traj.times.resize(ns);
  traj.states.reserve(ns);
  for (int i = 0; i < ns; ++i) {
    traj.times[i] = i * dt;
    traj.states.push_back(spec_to_state(g, cur[i]));
  }
  return {std::move(traj), std::move(report)};
}

std::vector<double> residual_original(const EtaPhiTrajectory& traj) {
  traj.validate();
  const std::size_t ns = traj.states.size();
  if (ns < 5)
    throw PreconditionError("residual_original: needs at least 5 time slices");
  const double dt = traj.dt();
  const GridSpec& g = traj.grid;

  // 4th-order finite difference of the stored states at slice i.
  auto fd4 = [&](auto&& comp, std::size_t i) {
    Field out(g, Rep::Fourier);
    auto acc = [&](double cfac, std::size_t j) {
      add_scaled_inplace(out, cfac / (12.0 * dt), comp(j).in_rep(Rep::Fourier));
    };
    if (i == 0) {
      acc(-25, 0); acc(48, 1); acc(-36, 2); acc(16, 3); acc(-3, 4);
    } else if (i == 1) {
      acc(-3, 0); acc(-10, 1); acc(18, 2); acc(-6, 3); acc(1, 4);
    } else if (i == ns - 2) {
      acc(3, ns - 1); acc(10, ns - 2); acc(-18, ns - 3); acc(6, ns - 4); acc(-1, ns - 5);
    } else if (i == ns - 1) {
      acc(25, ns - 1); acc(-48, ns - 2); acc(36, ns - 3); acc(-16, ns - 4); acc(3, ns - 5);
    } else {
      acc(1, i - 2); acc(-8, i - 1); acc(8, i + 1); acc(-1, i + 2);
    }
    return out;
  };

  std::vector<double> res(ns);
  for (std::size_t i = 0; i < ns; ++i) {
    const auto [eta_t, phi_t] = rhs_etaphi(traj.states[i]);
    const Field re = sub(fd4([&](std::size_t j) -> const Field& { return traj.states[j].eta; }, i),
                         eta_t);
    Field rp = sub(fd4([&](std::size_t j) -> const Field& { return traj.states[j].phi; }, i),
                   phi_t);
    // The stored phi is the mean-zero representative of a potential defined
    // up to a constant; its true mean drifts by -1/2 avg|grad phi|^2.  The
    // residual is measured in the same gauge (zero mode projected out).
    rp[0] = 0.0;
    const double a = re.l2(), b = rp.l2();
    res[i] = std::sqrt(a * a + b * b);
  }
  return res;
}

std::vector<MonitorRow> monitor_rows(const WTrajectory& traj) {
  std::vector<MonitorRow> rows;
  rows.reserve(traj.states.size());
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const StateW& s = traj.states[i];
    const auto [c1, c2] = curl_residual(s);
    rows.push_back({traj.times[i], s.l2(), c1, c2, conjugate_pair_deviation(s)});
  }
  return rows;
}

}  // namespace bql
