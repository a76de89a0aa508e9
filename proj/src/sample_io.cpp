#include "rmt/sample_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string_view>

#include "rmt/error.hpp"

namespace rmt {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_finite(std::string_view cell, double& out) {
  cell = trim(cell);
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  if (cell.empty()) return false;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
  return ec == std::errc() && ptr == cell.data() + cell.size() && std::isfinite(out);
}

// Rows of cells, with the 1-based source line number of each row.
struct ParsedRows {
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> lines;
};

ParsedRows parse_rows(std::istream& in, bool has_header) {
  ParsedRows out;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  bool header_pending = has_header;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    std::vector<double> row;
    std::size_t start = 0;
    std::size_t col = 0;
    while (true) {
      const auto comma = view.find(',', start);
      const auto cell = view.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      ++col;
      double value = 0.0;
      if (!parse_finite(cell, value)) {
        throw Error(ErrorKind::NonNumericCell,
                    "line " + std::to_string(line_no) + ", column " + std::to_string(col) + ": '" +
                        std::string(trim(cell)) + "'",
                    {line_no, col});
      }
      row.push_back(value);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (out.rows.empty()) {
      width = row.size();
    } else if (row.size() != width) {
      throw Error(ErrorKind::RaggedRows,
                  "line " + std::to_string(line_no) + " has " + std::to_string(row.size()) +
                      " columns, expected " + std::to_string(width),
                  {line_no});
    }
    out.rows.push_back(std::move(row));
    out.lines.push_back(line_no);
  }
  if (out.rows.empty()) throw Error(ErrorKind::EmptyFile, "no data rows");
  return out;
}

Matrix to_matrix(const ParsedRows& parsed) {
  const auto n = static_cast<Eigen::Index>(parsed.rows.size());
  const auto d = static_cast<Eigen::Index>(parsed.rows.front().size());
  Matrix m(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = parsed.rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::FileNotFound, path.string());
  return in;
}

}  // namespace

Sample parse_sample_csv(std::istream& in, bool has_header) {
  return Sample(to_matrix(parse_rows(in, has_header)));
}

Sample load_sample_csv(const std::filesystem::path& path, bool has_header) {
  auto in = open_or_throw(path);
  return parse_sample_csv(in, has_header);
}

Matrix load_matrix_csv(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  Matrix m = to_matrix(parse_rows(in, false));
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::DomainError,
                "matrix file is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected square");
  }
  return m;
}

void write_sample_csv(const Sample& s, std::ostream& out) {
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t i = 0; i < s.n(); ++i) {
    for (std::size_t j = 0; j < s.d(); ++j) {
      if (j) out << ',';
      out << s(i, j);
    }
    out << '\n';
  }
}

void write_sample_csv(const Sample& s, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
  write_sample_csv(s, out);
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

std::string describe(const Finding& f) {
  switch (f.kind) {
    case FindingKind::TooFewObservations: return "TooFewObservations";
    case FindingKind::NoCoordinates: return "NoCoordinates";
    case FindingKind::NonFinite:
      return "NonFinite(" + std::to_string(f.row) + "," + std::to_string(f.col) + ")";
  }
  return "Unknown";
}

std::vector<Finding> validate_sample(const Sample& s) {
  std::vector<Finding> findings;
  if (s.n() < 2) findings.push_back({FindingKind::TooFewObservations});
  if (s.d() < 1) findings.push_back({FindingKind::NoCoordinates});
  for (std::size_t i = 0; i < s.n(); ++i) {
    for (std::size_t j = 0; j < s.d(); ++j) {
      if (!std::isfinite(s(i, j))) findings.push_back({FindingKind::NonFinite, i + 1, j + 1});
    }
  }
  return findings;
}

}  // namespace rmt
