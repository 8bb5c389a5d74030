#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include "bql/errors.hpp"

namespace bql {

std::uint64_t fnv1a64(const std::string& s);

/// Deterministic CSV writer: a '#' provenance comment line (config hash and
/// context), a header row naming the columns, then rows.  Doubles are
/// rendered with %.17g so a fixed config reproduces byte-identical files.
class CsvWriter {
 public:
  using Cell = std::variant<double, long long, std::string>;

  CsvWriter(const std::string& path, const std::string& provenance,
            const std::vector<std::string>& columns);
  void row(const std::vector<Cell>& cells);

  static std::string fmt(double v);

 private:
  std::ofstream out_;
  std::size_t ncols_;
};

}  // namespace bql
