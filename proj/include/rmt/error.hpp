#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rmt {

enum class ErrorKind {
  FileNotFound,
  RaggedRows,
  NonNumericCell,
  EmptyFile,
  InvalidTuning,
  EpsilonTooLarge,
  InvalidInterval,
  DomainError,
  NotSymmetric,
  EigenFailure,
  DegenerateCorrelation,
  AllCoordinatesDegenerate,
  InvalidParameter,
  IoError,
};

std::string_view to_string(ErrorKind kind);

/// Library-wide exception. `indices` carries the offending row/column
/// numbers (1-based, as shown to users) when the error has a location.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::vector<std::size_t> indices = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }

 private:
  ErrorKind kind_;
  std::vector<std::size_t> indices_;
};

}  // namespace rmt
