#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace rmt {

using Matrix = Eigen::MatrixXd;  // column-major: one contiguous column per coordinate
using Vector = Eigen::VectorXd;

/// n observations of a d-dimensional vector, stored column-major so each
/// coordinate is a contiguous run of n values. Invariants (n >= 2, d >= 1,
/// finite entries) are checked by validate_sample, not by construction, so
/// that invalid data can still be inspected and reported on.
class Sample {
 public:
  Sample() = default;
  explicit Sample(Matrix data) : data_(std::move(data)) {}

  std::size_t n() const { return static_cast<std::size_t>(data_.rows()); }
  std::size_t d() const { return static_cast<std::size_t>(data_.cols()); }
  const Matrix& data() const { return data_; }

  const double* column(std::size_t j) const { return data_.col(static_cast<Eigen::Index>(j)).data(); }
  double operator()(std::size_t i, std::size_t j) const {
    return data_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

 private:
  Matrix data_;
};

/// Moment class P(b1, b2, m): variances bounded below by b1, m-th absolute
/// moments bounded above by b2.
struct MomentClass {
  double b1 = 1.0;
  double b2 = 2.0;
  double m = 4.0;

  void validate() const;
};

struct TuningConfig {
  double alpha = 0.05;
  double c = 1.1;      // winsorization tuning for the mean, must lie in (1, sqrt(1.5))
  double c_cov = 1.1;  // tuning for the covariance winsorization fraction, any value > 1
  double eta_bar = 0.0;
  std::size_t boot_draws = 2000;
  std::uint64_t seed = 0;

  /// Throws Error(InvalidTuning) when a field is out of range.
  void validate() const;
};

enum class Method { Mean, Winsor, WinsorBoot };

std::string_view to_string(Method m);
/// Accepts "mean", "winsor", "winsor-boot" (and the enum spellings).
std::optional<Method> parse_method(std::string_view text);

struct TestReport {
  Method method = Method::Mean;
  std::size_t n = 0;
  std::size_t d = 0;
  Vector coord_stats;  // NaN on degenerate coordinates
  double sup_norm = 0.0;
  double critical_value = 0.0;
  bool reject = false;
  std::optional<double> epsilon_used;        // absent for the mean test
  std::optional<double> epsilon_prime_used;  // absent for the mean test
  std::vector<std::size_t> degenerate_coords;  // 0-based

  bool operator==(const TestReport& other) const;
};

}  // namespace rmt
