#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bql/state.hpp"

namespace bql {

/// Run configuration for the CLI: flat key = value text file plus
/// command-line overrides (flag wins).  Unknown keys are configuration
/// errors.  All numeric parameters are validated before any computation.
struct RunConfig {
  std::string subcommand;

  // grid
  int nx = 128, ny = 128;
  double Lx = 16.0, Ly = 16.0;
  double dealias = 2.0 / 3.0;

  // regularity
  double s = 1.6;

  // initial data: gaussian | modes | snapshot
  std::string data = "gaussian";
  double gaussian_x0 = 8.0, gaussian_y0 = 8.0;
  double gaussian_width = 1.5;
  double gaussian_amplitude = 0.01;
  std::string modes;  // "jx:jy:re:im;jx:jy:re:im;..."
  std::string snapshot;

  // time stepping / fixed point
  double T = 1.0;
  double dt = 0.01;
  int nt = 64;
  double tol = 1e-10;
  int max_iter = 25;
  int save_every = 1;

  // estimates
  std::string family = "all";
  double beta = 0.0;
  double delta = 0.0;

  // norms subcommand input
  std::string traj;
  double q = 2.0, p = 2.0;

  std::string out = "out";
  std::uint64_t seed = 1;
  int threads = 0;  // 0 = library default

  /// Parse `key = value` lines ('#' comments allowed).
  static RunConfig from_file(const std::string& path);
  static RunConfig defaults() { return {}; }

  void set(const std::string& key, const std::string& value);
  void validate() const;

  /// Canonical serialization (sorted keys) used for the provenance hash.
  std::string canonical_string() const;
  std::uint64_t config_hash() const;

  GridSpec grid() const { return {nx, ny, Lx, Ly, dealias}; }

  /// Build the (eta, phi) data described by `data`, or load a w snapshot.
  StateEtaPhi initial_etaphi() const;
  StateW initial_w() const;
};

}  // namespace bql
