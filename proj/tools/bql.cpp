// bql: batch front end for the Boussinesq-type pseudospectral laboratory.
//
//   bql <simulate|picard|norms|verify-estimates> [--config file] [--key value ...]
//
// Exit codes: 0 ok, 2 config error, 3 numerical failure, 4 IO/format error.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "bql/bessel.hpp"
#include "bql/config.hpp"
#include "bql/csv.hpp"
#include "bql/dynamics.hpp"
#include "bql/estimates.hpp"
#include "bql/norms.hpp"
#include "bql/snapshot.hpp"
#include "bql/symbol.hpp"
#include "bql/synth.hpp"

namespace fs = std::filesystem;
using namespace bql;

namespace {

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string provenance(const RunConfig& cfg) {
  return "config_hash=" + hex64(cfg.config_hash()) + " subcommand=" + cfg.subcommand +
         " threads=" + std::to_string(kernels::thread_count()) +
         " seed=" + std::to_string(cfg.seed);
}

std::string snap_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "w_%06d.snap", index);
  return buf;
}

void write_trajectory(const RunConfig& cfg, const WTrajectory& traj) {
  fs::create_directories(cfg.out);
  CsvWriter index(cfg.out + "/traj_index.csv", provenance(cfg), {"step", "time", "file"});
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const std::string name = snap_name(static_cast<int>(i));
    write_snapshot(traj.states[i], traj.times[i], cfg.out + "/" + name);
    index.row({static_cast<long long>(i), traj.times[i], name});
  }
  CsvWriter monitors(cfg.out + "/monitors.csv", provenance(cfg),
                     {"time", "l2", "curl1", "curl2", "conj_dev"});
  for (const MonitorRow& row : monitor_rows(traj))
    monitors.row({row.t, row.l2, row.curl1, row.curl2, row.conj_dev});
}

int run_simulate(const RunConfig& cfg) {
  const StateW w0 = cfg.initial_w();
  SimulateOptions opts;
  opts.save_every = cfg.save_every;
  const WTrajectory traj = simulate(w0, cfg.T, cfg.dt, opts);
  write_trajectory(cfg, traj);
  std::cout << "simulate: " << traj.states.size() << " states -> " << cfg.out << "\n";
  return 0;
}

int run_picard(const RunConfig& cfg) {
  const StateW w0 = cfg.initial_w();
  auto [traj, report] = picard_solve(w0, cfg.T, cfg.nt, cfg.max_iter, cfg.tol);
  write_trajectory(cfg, traj);
  CsvWriter rep(cfg.out + "/picard_report.csv", provenance(cfg),
                {"iteration", "diff", "ratio", "converged"});
  for (std::size_t i = 0; i < report.successive_diffs.size(); ++i) {
    const double ratio = i == 0 ? 0.0
                               : report.successive_diffs[i] / report.successive_diffs[i - 1];
    rep.row({static_cast<long long>(i + 1), report.successive_diffs[i], ratio,
             static_cast<long long>(report.converged ? 1 : 0)});
  }
  std::cout << "picard: converged in " << report.iterate_count
            << " iterations, contraction ratio " << report.contraction_ratio_estimate
            << "\n";
  return 0;
}

WTrajectory load_trajectory(const std::string& dir) {
  std::ifstream in(dir + "/traj_index.csv");
  if (!in) throw FormatError("norms: cannot open '" + dir + "/traj_index.csv'");
  WTrajectory traj;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {  // column header
      header_seen = true;
      continue;
    }
    std::istringstream ss(line);
    std::string step, time, file;
    if (!std::getline(ss, step, ',') || !std::getline(ss, time, ',') ||
        !std::getline(ss, file))
      throw FormatError("norms: malformed traj_index row '" + line + "'");
    double t = 0.0;
    StateW s = read_snapshot_w(dir + "/" + file, &t);
    traj.times.push_back(t);
    traj.states.push_back(std::move(s));
  }
  if (traj.states.empty()) throw FormatError("norms: empty trajectory index");
  traj.grid = traj.states[0].grid();
  traj.meta = {"loaded", traj.times.size() > 1 ? traj.times[1] - traj.times[0] : 0.0,
               traj.grid.dealias_fraction};
  return traj;
}

int run_norms(const RunConfig& cfg) {
  if (cfg.traj.empty()) throw ConfigError("norms: set --traj <dir with traj_index.csv>");
  const WTrajectory traj = load_trajectory(cfg.traj);
  const SobolevIndices idx = SobolevIndices::from_s(cfg.s);

  CsvWriter out(cfg.out + "/norms.csv", provenance(cfg),
                {"component", "Hs", "Vs", "omega1", "omega2", "omega3", "omega4",
                 "omega5", "omega_T", "cube_smoothing", "maximal", "mixed_q_p"});
  const char* names[4] = {"w1", "w2", "w3", "w4"};
  std::vector<double> sums(9, 0.0);
  for (int c = 0; c < 4; ++c) {
    FieldTrack track;
    track.times = traj.times;
    for (const StateW& s : traj.states) track.slices.push_back(*s.fields()[c]);
    NormReport rep;
    rep.grid = traj.grid;
    rep.T = traj.T();
    rep.dt = traj.dt();
    const double hs = sobolev_norm(track.slices[0], cfg.s);
    const double vs = vs_norm(project_mean_zero(track.slices[0]), cfg.s);
    std::vector<double> om(5);
    for (int j = 1; j <= 5; ++j) om[j - 1] = omega(track, idx, j);
    const double om_T = *std::max_element(om.begin(), om.end());
    const double smooth = cube_smoothing_norm(track);
    const double maxi = maximal_norm(track);
    const double mixed = mixed_norm(track, cfg.q, cfg.p, MixedOrder::TimeOuter);
    rep.push("Hs", hs);
    rep.push("Vs", vs);
    for (int j = 0; j < 5; ++j) rep.push("omega" + std::to_string(j + 1), om[j]);
    rep.push("omega_T", om_T);
    rep.push("cube_smoothing", smooth);
    rep.push("maximal", maxi);
    rep.push("mixed", mixed);
    rep.validate();
    out.row({std::string(names[c]), hs, vs, om[0], om[1], om[2], om[3], om[4], om_T,
             smooth, maxi, mixed});
    sums[0] += hs;
    sums[1] += vs;
    for (int j = 0; j < 5; ++j) sums[2 + j] += om[j];
    sums[7] += smooth;
    sums[8] += maxi;
  }
  // Component sum row: the product-space norm adds components; omega_T of
  // the sum row is the max over j of the summed omegas.
  const double om_T_sum = *std::max_element(sums.begin() + 2, sums.begin() + 7);
  out.row({std::string("sum"), sums[0], sums[1], sums[2], sums[3], sums[4], sums[5],
           sums[6], om_T_sum, sums[7], sums[8], 0.0});
  std::cout << "norms: wrote " << cfg.out << "/norms.csv\n";
  return 0;
}

void family_decay(const RunConfig& cfg) {
  CsvWriter out(cfg.out + "/decay.csv", provenance(cfg),
                {"beta", "t", "kernel_sup", "fitted_slope", "slope_stderr"});
  std::vector<double> betas;
  if (cfg.family == "decay")
    betas = {cfg.beta};
  else
    betas = {0.0, 0.5, 1.0};
  std::vector<double> tgrid;
  for (int i = 0; i < 8; ++i) tgrid.push_back(5.0 * std::pow(10.0, i / 7.0));
  for (double b : betas) {
    const estimates::DecayFitReport rep = estimates::decay_fit(b, tgrid);
    for (std::size_t i = 0; i < rep.times.size(); ++i)
      out.row({b, rep.times[i], rep.sup_values[i], rep.fitted_slope, rep.slope_stderr});
  }
}

void family_strichartz(const RunConfig& cfg) {
  CsvWriter out(cfg.out + "/strichartz.csv", provenance(cfg),
                {"delta", "q_delta", "nx", "ny", "ratio"});
  for (double delta : {0.0, 0.25, 0.45}) {
    for (int refine = 1; refine <= 2; ++refine) {
      GridSpec g = cfg.grid();
      g.nx *= refine;
      g.ny *= refine;
      Field w0 = gaussian_bump(g, cfg.gaussian_x0, cfg.gaussian_y0, cfg.gaussian_width,
                               1.0);
      const double ratio = estimates::strichartz_ratio(w0, delta, cfg.T, cfg.dt);
      out.row({delta, 3.0 / (1.0 + delta), static_cast<long long>(g.nx),
               static_cast<long long>(g.ny), ratio});
    }
  }
}

void family_smoothing(const RunConfig& cfg) {
  CsvWriter out(cfg.out + "/smoothing.csv", provenance(cfg),
                {"seed", "T", "ratio", "bound"});
  const double bound = 1.0 / std::sqrt(3.0);
  for (std::uint64_t seed = cfg.seed; seed < cfg.seed + 10; ++seed) {
    Field w0 = random_real_field(cfg.grid(), seed, 6, 0.8);
    for (double T : {1.0, 8.0, 64.0}) {
      const double ratio = estimates::smoothing_ratio(w0, T, 0.05);
      out.row({static_cast<long long>(seed), T, ratio, bound});
    }
  }
}

void family_maximal(const RunConfig& cfg) {
  CsvWriter out(cfg.out + "/maximal.csv", provenance(cfg), {"seed", "T", "s", "ratio"});
  for (std::uint64_t seed = cfg.seed; seed < cfg.seed + 10; ++seed) {
    Field w0 = random_real_field(cfg.grid(), seed, 6, 0.9);
    for (double T : {1.0, 4.0, 16.0}) {
      const double ratio = estimates::maximal_ratio(w0, cfg.s, T, 0.02);
      out.row({static_cast<long long>(seed), T, cfg.s, ratio});
    }
  }
}

void family_bessel(const RunConfig& cfg) {
  CsvWriter out(cfg.out + "/bessel.csv", provenance(cfg),
                {"m", "r", "J_quadrature", "J_series", "abs_err"});
  for (double m : {0.0, 0.5, 1.0, 2.0})
    for (double r : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0}) {
      const double got = bessel::bessel_j(m, r);
      double series = 0.0;
      for (int j = 0; j <= 20; ++j)
        series += std::pow(-1.0, j) * std::pow(0.5 * r, 2.0 * j + m) /
                  (std::tgamma(j + 1.0) * std::tgamma(j + m + 1.0));
      out.row({m, r, got, series, std::abs(got - series)});
    }
}

void family_leibniz(const RunConfig& cfg) {
  CsvWriter out(cfg.out + "/leibniz.csv", provenance(cfg), {"sample", "m", "p", "ratio"});
  const double m = 0.6, p = 2.0;
  for (std::uint64_t seed = cfg.seed; seed < cfg.seed + 20; ++seed) {
    Field f = random_real_field(cfg.grid(), seed, 7, 1.0);
    Field g = random_real_field(cfg.grid(), seed + 10000, 7, 1.0);
    out.row({static_cast<long long>(seed), m, p, estimates::frac_leibniz_defect(f, g, m, p)});
  }
}

void family_vdc(const RunConfig& cfg) {
  CsvWriter out(cfg.out + "/vdc.csv", provenance(cfg),
                {"phase", "lambda", "lhs", "ratio"});
  estimates::VdcProblem fresnel;
  fresnel.f = [](double x) { return x * x; };
  fresnel.fp = [](double x) { return 2.0 * x; };
  fresnel.fpp = [](double) { return 2.0; };
  fresnel.psi = [](double) { return 1.0; };
  fresnel.dpsi = [](double) { return 0.0; };
  fresnel.a = 0.0;
  fresnel.b = 1.0;
  estimates::VdcProblem cubic;
  cubic.f = [](double u) { return u * u * u - 3.0 * u; };
  cubic.fp = [](double u) { return 3.0 * u * u - 3.0; };
  cubic.fpp = [](double u) { return 6.0 * u; };
  cubic.psi = [](double u) { return std::exp(-4.0 * (u - 1.0) * (u - 1.0)); };
  cubic.dpsi = [](double u) {
    return -8.0 * (u - 1.0) * std::exp(-4.0 * (u - 1.0) * (u - 1.0));
  };
  cubic.a = 0.4;
  cubic.b = 2.0;
  const std::vector<double> lams{1e2, 1e3, 1e4, 1e5};
  const auto r1 = estimates::van_der_corput_check(fresnel, lams);
  const auto r2 = estimates::van_der_corput_check(cubic, lams);
  for (std::size_t i = 0; i < lams.size(); ++i) {
    out.row({std::string("quadratic"), lams[i], r1.lhs[i], r1.ratios[i]});
    out.row({std::string("cubic"), lams[i], r2.lhs[i], r2.ratios[i]});
  }
}

void family_h_envelope(const RunConfig& cfg) {
  CsvWriter out(cfg.out + "/h_envelope.csv", provenance(cfg),
                {"k", "r", "magnitude", "fitted_exponent"});
  std::vector<double> grid;
  for (double r = 20.0; r <= 500.0; r *= 1.23) grid.push_back(r);
  for (int k = 0; k <= 2; ++k) {
    const auto rep = estimates::h_envelope_check(k, grid);
    for (std::size_t i = 0; i < rep.r.size(); ++i)
      out.row({static_cast<long long>(k), rep.r[i], rep.magnitude[i],
               rep.fitted_exponent});
  }
}

int run_verify_estimates(const RunConfig& cfg) {
  fs::create_directories(cfg.out);
  const std::string fam = cfg.family;
  bool matched = false;
  auto want = [&](const char* name) {
    const bool yes = fam == "all" || fam == name;
    matched = matched || yes;
    return yes;
  };
  if (want("decay")) family_decay(cfg);
  if (want("strichartz")) family_strichartz(cfg);
  if (want("smoothing")) family_smoothing(cfg);
  if (want("maximal")) family_maximal(cfg);
  if (want("bessel")) family_bessel(cfg);
  if (want("leibniz")) family_leibniz(cfg);
  if (want("vdc")) family_vdc(cfg);
  if (want("h-envelope")) family_h_envelope(cfg);
  if (!matched)
    throw ConfigError("verify-estimates: unknown family '" + fam + "'");
  std::cout << "verify-estimates: family " << fam << " -> " << cfg.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bql: pseudospectral laboratory for a 2D Boussinesq-type system"};
  app.require_subcommand(1);

  std::vector<std::pair<std::string, std::string>> overrides;
  std::string config_path;

  const std::vector<std::string> keys{
      "nx", "ny", "Lx", "Ly", "dealias", "s", "data", "gaussian.x0", "gaussian.y0",
      "gaussian.width", "gaussian.amplitude", "modes", "snapshot", "T", "dt", "nt",
      "tol", "max_iter", "save_every", "family", "beta", "delta", "traj", "q", "p",
      "out", "seed", "threads"};

  std::vector<CLI::App*> subs;
  for (const char* name : {"simulate", "picard", "norms", "verify-estimates"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "flat key = value configuration file");
    for (const std::string& key : keys) {
      sub->add_option_function<std::string>(
          "--" + key,
          [&overrides, key](const std::string& v) { overrides.emplace_back(key, v); },
          "override config key " + key);
    }
    subs.push_back(sub);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg =
        config_path.empty() ? RunConfig::defaults() : RunConfig::from_file(config_path);
    cfg.subcommand = app.get_subcommands().front()->get_name();
    for (const auto& [k, v] : overrides) cfg.set(k, v);  // flag wins over file
    cfg.validate();

    if (const char* env = std::getenv("BQL_THREADS"); env && cfg.threads == 0)
      kernels::set_thread_count(std::atoi(env));
    else if (cfg.threads > 0)
      kernels::set_thread_count(cfg.threads);

    if (cfg.subcommand == "simulate") return run_simulate(cfg);
    if (cfg.subcommand == "picard") return run_picard(cfg);
    if (cfg.subcommand == "norms") return run_norms(cfg);
    return run_verify_estimates(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
