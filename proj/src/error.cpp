#include "rmt/error.hpp"

namespace rmt {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::FileNotFound: return "FileNotFound";
    case ErrorKind::RaggedRows: return "RaggedRows";
    case ErrorKind::NonNumericCell: return "NonNumericCell";
    case ErrorKind::EmptyFile: return "EmptyFile";
    case ErrorKind::InvalidTuning: return "InvalidTuning";
    case ErrorKind::EpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorKind::InvalidInterval: return "InvalidInterval";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::EigenFailure: return "EigenFailure";
    case ErrorKind::DegenerateCorrelation: return "DegenerateCorrelation";
    case ErrorKind::AllCoordinatesDegenerate: return "AllCoordinatesDegenerate";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::vector<std::size_t> indices)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      indices_(std::move(indices)) {}

}  // namespace rmt
