#include "bql/config.hpp"

#include <fstream>
#include <sstream>

#include "bql/csv.hpp"
#include "bql/reformulate.hpp"
#include "bql/snapshot.hpp"
#include "bql/synth.hpp"

namespace bql {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' expects a number, got '" + v + "'");
  }
}

long long parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' expects an integer, got '" + v + "'");
  }
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
  if (key == "nx") nx = static_cast<int>(parse_int(key, value));
  else if (key == "ny") ny = static_cast<int>(parse_int(key, value));
  else if (key == "Lx") Lx = parse_double(key, value);
  else if (key == "Ly") Ly = parse_double(key, value);
  else if (key == "dealias") dealias = parse_double(key, value);
  else if (key == "s") s = parse_double(key, value);
  else if (key == "data") data = value;
  else if (key == "gaussian.x0") gaussian_x0 = parse_double(key, value);
  else if (key == "gaussian.y0") gaussian_y0 = parse_double(key, value);
  else if (key == "gaussian.width") gaussian_width = parse_double(key, value);
  else if (key == "gaussian.amplitude") gaussian_amplitude = parse_double(key, value);
  else if (key == "modes") modes = value;
  else if (key == "snapshot") snapshot = value;
  else if (key == "T") T = parse_double(key, value);
  else if (key == "dt") dt = parse_double(key, value);
  else if (key == "nt") nt = static_cast<int>(parse_int(key, value));
  else if (key == "tol") tol = parse_double(key, value);
  else if (key == "max_iter") max_iter = static_cast<int>(parse_int(key, value));
  else if (key == "save_every") save_every = static_cast<int>(parse_int(key, value));
  else if (key == "family") family = value;
  else if (key == "beta") beta = parse_double(key, value);
  else if (key == "delta") delta = parse_double(key, value);
  else if (key == "traj") traj = value;
  else if (key == "q") q = parse_double(key, value);
  else if (key == "p") p = parse_double(key, value);
  else if (key == "out") out = value;
  else if (key == "seed") seed = static_cast<std::uint64_t>(parse_int(key, value));
  else if (key == "threads") threads = static_cast<int>(parse_int(key, value));
  else throw ConfigError("config: unknown key '" + key + "'");
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(lineno) +
                        " is not 'key = value'");
    cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

void RunConfig::validate() const {
  try {
    grid().validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (data != "gaussian" && data != "modes" && data != "snapshot")
    throw ConfigError("config: data must be gaussian | modes | snapshot");
  if (data == "gaussian" && !(gaussian_width > 0.0))
    throw ConfigError("config: gaussian.width must be positive");
  if (data == "modes" && modes.empty())
    throw ConfigError("config: data = modes needs a non-empty 'modes' list");
  if (data == "snapshot" && snapshot.empty())
    throw ConfigError("config: data = snapshot needs a 'snapshot' path");
  if (!(T > 0.0)) throw ConfigError("config: T must be positive");
  if (!(dt > 0.0)) throw ConfigError("config: dt must be positive");
  if (nt < 2 || nt % 2 != 0) throw ConfigError("config: nt must be even and >= 2");
  if (!(tol > 0.0)) throw ConfigError("config: tol must be positive");
  if (max_iter < 1) throw ConfigError("config: max_iter must be >= 1");
  if (save_every < 1) throw ConfigError("config: save_every must be >= 1");
  if (beta < 0.0 || beta > 1.0) throw ConfigError("config: beta must lie in [0,1]");
  if (delta < 0.0 || delta >= 0.5) throw ConfigError("config: delta must lie in [0,1/2)");
  if (!(q >= 1.0) || !(p >= 1.0)) throw ConfigError("config: q, p must be >= 1");
  if (threads < 0) throw ConfigError("config: threads must be >= 0");
}

std::string RunConfig::canonical_string() const {
  std::map<std::string, std::string> kv;
  kv["subcommand"] = subcommand;
  kv["nx"] = std::to_string(nx);
  kv["ny"] = std::to_string(ny);
  kv["Lx"] = CsvWriter::fmt(Lx);
  kv["Ly"] = CsvWriter::fmt(Ly);
  kv["dealias"] = CsvWriter::fmt(dealias);
  kv["s"] = CsvWriter::fmt(s);
  kv["data"] = data;
  kv["gaussian.x0"] = CsvWriter::fmt(gaussian_x0);
  kv["gaussian.y0"] = CsvWriter::fmt(gaussian_y0);
  kv["gaussian.width"] = CsvWriter::fmt(gaussian_width);
  kv["gaussian.amplitude"] = CsvWriter::fmt(gaussian_amplitude);
  kv["modes"] = modes;
  kv["snapshot"] = snapshot;
  kv["T"] = CsvWriter::fmt(T);
  kv["dt"] = CsvWriter::fmt(dt);
  kv["nt"] = std::to_string(nt);
  kv["tol"] = CsvWriter::fmt(tol);
  kv["max_iter"] = std::to_string(max_iter);
  kv["save_every"] = std::to_string(save_every);
  kv["family"] = family;
  kv["beta"] = CsvWriter::fmt(beta);
  kv["delta"] = CsvWriter::fmt(delta);
  kv["traj"] = traj;
  kv["q"] = CsvWriter::fmt(q);
  kv["p"] = CsvWriter::fmt(p);
  // `out` is excluded: the hash describes the computation, not where the
  // artifacts land.
  kv["seed"] = std::to_string(seed);
  kv["threads"] = std::to_string(threads);
  std::ostringstream os;
  for (const auto& [k, v] : kv) os << k << "=" << v << "\n";
  return os.str();
}

std::uint64_t RunConfig::config_hash() const { return fnv1a64(canonical_string()); }

StateEtaPhi RunConfig::initial_etaphi() const {
  const GridSpec g = grid();
  if (data == "gaussian") {
    Field eta = gaussian_bump(g, gaussian_x0, gaussian_y0, gaussian_width,
                              gaussian_amplitude);
    Field phi = gaussian_bump(g, gaussian_x0, gaussian_y0, gaussian_width,
                              gaussian_amplitude);
    return {std::move(eta), std::move(phi)};
  }
  if (data == "modes") {
    // "jx:jy:re:im;..." cosine pairs go into eta; phi starts at zero.
    Field eta(g, Rep::Physical), phi(g, Rep::Physical);
    std::istringstream items(modes);
    std::string item;
    while (std::getline(items, item, ';')) {
      std::istringstream fields(item);
      std::string tok;
      std::vector<double> vals;
      while (std::getline(fields, tok, ':')) vals.push_back(parse_double("modes", tok));
      if (vals.size() != 4) throw ConfigError("config: modes entries are jx:jy:re:im");
      eta = add(eta, single_mode(g, static_cast<int>(vals[0]), static_cast<int>(vals[1]),
                                 cplx(vals[2], vals[3]))
                         .in_rep(Rep::Physical));
    }
    // Real part only; keep eta Hermitian by construction of the caller data.
    for (std::size_t i = 0; i < g.size(); ++i) eta[i] = eta[i].real();
    return {project_mean_zero(eta), std::move(phi)};
  }
  throw ConfigError("config: initial_etaphi undefined for data = snapshot");
}

StateW RunConfig::initial_w() const {
  if (data == "snapshot") return read_snapshot_w(snapshot);
  return differentiate_to_w(diagonalize(initial_etaphi()));
}

}  // namespace bql
