#include "bql/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little-endian; byte swapping not implemented");

namespace bql {

namespace {

constexpr char kMagic[8] = {'B', 'Q', 'L', 'S', 'N', 'A', 'P', '\0'};
constexpr std::size_t kHeaderBytes = 8 + 4 + 4 + 4 + 4 + 8 + 8 + 8 + 1 + 1 + 6;

template <class T>
void put(std::string& buf, const T& v) {
  const char* p = reinterpret_cast<const char*>(&v);
  buf.append(p, sizeof(T));
}

template <class T>
T take(const char*& p, const char* end) {
  if (p + sizeof(T) > end) throw FormatError("snapshot: truncated header");
  T v;
  std::memcpy(&v, p, sizeof(T));
  p += sizeof(T);
  return v;
}

}  // namespace

void write_snapshot(const std::vector<const Field*>& fields, double t,
                    bool real_valued, const std::string& path) {
  if (fields.empty()) throw StructuralError("write_snapshot: no fields");
  const GridSpec& g = fields[0]->grid();
  for (const Field* f : fields) {
    require_same_layout(f->grid(), g, "write_snapshot");
    if (f->rep() != fields[0]->rep())
      throw StructuralError("write_snapshot: mixed representations");
  }
  std::string buf;
  buf.reserve(kHeaderBytes + fields.size() * g.size() * 16);
  buf.append(kMagic, 8);
  put<std::uint32_t>(buf, 1u);
  put<std::uint32_t>(buf, static_cast<std::uint32_t>(fields.size()));
  put<std::uint32_t>(buf, static_cast<std::uint32_t>(g.nx));
  put<std::uint32_t>(buf, static_cast<std::uint32_t>(g.ny));
  put<double>(buf, g.Lx);
  put<double>(buf, g.Ly);
  put<double>(buf, t);
  put<std::uint8_t>(buf, static_cast<std::uint8_t>(fields[0]->rep()));
  put<std::uint8_t>(buf, real_valued ? 1 : 0);
  for (int i = 0; i < 6; ++i) put<std::uint8_t>(buf, 0);
  for (const Field* f : fields) {
    for (std::size_t i = 0; i < f->size(); ++i) {
      put<double>(buf, (*f)[i].real());
      put<double>(buf, (*f)[i].imag());
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("write_snapshot: cannot open '" + path + "'");
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw FormatError("write_snapshot: short write to '" + path + "'");
}

void write_snapshot(const StateW& s, double t, const std::string& path) {
  write_snapshot({&s.w1, &s.w2, &s.w3, &s.w4}, t, false, path);
}

void write_snapshot(const StateEtaPhi& s, double t, const std::string& path) {
  write_snapshot({&s.eta, &s.phi}, t, true, path);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("read_snapshot: cannot open '" + path + "'");
  std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (buf.size() < kHeaderBytes) throw FormatError("read_snapshot: truncated header");
  const char* p = buf.data();
  const char* end = buf.data() + buf.size();
  if (std::memcmp(p, kMagic, 8) != 0)
    throw FormatError("read_snapshot: bad magic in '" + path + "'");
  p += 8;
  Snapshot snap;
  snap.header.version = take<std::uint32_t>(p, end);
  if (snap.header.version != 1)
    throw FormatError("read_snapshot: unsupported version");
  snap.header.field_count = take<std::uint32_t>(p, end);
  snap.header.nx = take<std::uint32_t>(p, end);
  snap.header.ny = take<std::uint32_t>(p, end);
  snap.header.Lx = take<double>(p, end);
  snap.header.Ly = take<double>(p, end);
  snap.header.t = take<double>(p, end);
  snap.header.representation = take<std::uint8_t>(p, end);
  snap.header.real_valued = take<std::uint8_t>(p, end);
  for (int i = 0; i < 6; ++i) take<std::uint8_t>(p, end);

  GridSpec g{static_cast<int>(snap.header.nx), static_cast<int>(snap.header.ny),
             snap.header.Lx, snap.header.Ly};
  g.validate();
  const std::size_t expected =
      static_cast<std::size_t>(snap.header.field_count) * g.size() * 16;
  if (static_cast<std::size_t>(end - p) != expected)
    throw FormatError("read_snapshot: payload length does not match header");
  const Rep rep = snap.header.representation == 0 ? Rep::Physical : Rep::Fourier;
  for (std::uint32_t f = 0; f < snap.header.field_count; ++f) {
    Field field(g, rep);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double re = take<double>(p, end);
      const double im = take<double>(p, end);
      field[i] = cplx(re, im);
    }
    snap.fields.push_back(std::move(field));
  }
  return snap;
}

StateW read_snapshot_w(const std::string& path, double* t_out) {
  Snapshot s = read_snapshot(path);
  if (s.header.field_count != 4)
    throw FormatError("read_snapshot_w: expected 4 fields");
  if (t_out) *t_out = s.header.t;
  return {std::move(s.fields[0]), std::move(s.fields[1]), std::move(s.fields[2]),
          std::move(s.fields[3])};
}

StateEtaPhi read_snapshot_etaphi(const std::string& path, double* t_out) {
  Snapshot s = read_snapshot(path);
  if (s.header.field_count != 2)
    throw FormatError("read_snapshot_etaphi: expected 2 fields");
  if (t_out) *t_out = s.header.t;
  return {std::move(s.fields[0]), std::move(s.fields[1])};
}

}  // namespace bql
