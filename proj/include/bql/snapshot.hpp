#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bql/state.hpp"

namespace bql {

/// Deterministic binary snapshot: fixed little-endian header followed by the
/// fields in declared order, row-major, each complex value as two IEEE-754
/// binary64 scalars (re, im).
///
///   magic     8 bytes  "BQLSNAP\0"
///   version   u32      1
///   fields    u32      field count
///   nx, ny    u32, u32
///   Lx, Ly    f64, f64
///   t         f64      time stamp
///   rep       u8       0 physical, 1 fourier
///   real      u8       1 when the payload stores a real-valued field set
///   pad       6 bytes  zero
struct SnapshotHeader {
  std::uint32_t version = 1;
  std::uint32_t field_count = 0;
  std::uint32_t nx = 0, ny = 0;
  double Lx = 0.0, Ly = 0.0;
  double t = 0.0;
  std::uint8_t representation = 0;
  std::uint8_t real_valued = 0;
};

struct Snapshot {
  SnapshotHeader header;
  std::vector<Field> fields;
};

void write_snapshot(const std::vector<const Field*>& fields, double t,
                    bool real_valued, const std::string& path);
void write_snapshot(const StateW& s, double t, const std::string& path);
void write_snapshot(const StateEtaPhi& s, double t, const std::string& path);

Snapshot read_snapshot(const std::string& path);
StateW read_snapshot_w(const std::string& path, double* t_out = nullptr);
StateEtaPhi read_snapshot_etaphi(const std::string& path, double* t_out = nullptr);

}  // namespace bql
