#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "rmt/types.hpp"

namespace rmt {

/// Reads a comma-separated file of decimal reals, one observation per line.
/// Errors: FileNotFound, EmptyFile, RaggedRows(line), NonNumericCell(line, column);
/// line and column numbers are 1-based and count the header line if present.
/// Non-finite values ("nan", "inf") are rejected as NonNumericCell.
Sample load_sample_csv(const std::filesystem::path& path, bool has_header);
Sample parse_sample_csv(std::istream& in, bool has_header);

/// Writes with 17 significant digits so that reloading is exact.
void write_sample_csv(const Sample& s, const std::filesystem::path& path);
void write_sample_csv(const Sample& s, std::ostream& out);

/// Reads a square matrix (no header), used for correlation inputs.
Matrix load_matrix_csv(const std::filesystem::path& path);

enum class FindingKind { TooFewObservations, NoCoordinates, NonFinite };

struct Finding {
  FindingKind kind;
  std::size_t row = 0;  // 1-based, NonFinite only
  std::size_t col = 0;  // 1-based, NonFinite only

  bool operator==(const Finding&) const = default;
};

std::string describe(const Finding& f);

/// One finding per violated Sample invariant; empty iff the sample is valid.
std::vector<Finding> validate_sample(const Sample& s);

}  // namespace rmt
