#include "bql/csv.hpp"

#include <cstdio>

namespace bql {

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string CsvWriter::fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::string& provenance,
                     const std::vector<std::string>& columns)
    : out_(path, std::ios::trunc), ncols_(columns.size()) {
  if (!out_) throw FormatError("CsvWriter: cannot open '" + path + "'");
  out_ << "# " << provenance << "\n";
  for (std::size_t i = 0; i < columns.size(); ++i)
    out_ << columns[i] << (i + 1 < columns.size() ? "," : "");
  out_ << "\n";
}

void CsvWriter::row(const std::vector<Cell>& cells) {
  if (cells.size() != ncols_)
    throw StructuralError("CsvWriter: row width does not match header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (const double* d = std::get_if<double>(&cells[i]))
      out_ << fmt(*d);
    else if (const long long* n = std::get_if<long long>(&cells[i]))
      out_ << *n;
    else
      out_ << std::get<std::string>(cells[i]);
    out_ << (i + 1 < cells.size() ? "," : "");
  }
  out_ << "\n";
  if (!out_) throw FormatError("CsvWriter: write failed");
}

}  // namespace bql
