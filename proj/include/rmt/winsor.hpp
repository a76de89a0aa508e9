#pragma once

// Winsorized means with order-statistic winsorization points, and the
// pair-difference winsorized covariance estimator used to normalize them.

#include <cstddef>
#include <span>
#include <vector>

#include "rmt/types.hpp"

namespace rmt {

/// Fraction trimmed from each tail for the mean:
///   eps = l1 * eta_bar + l2 * log(d n) / n,
///   l1 = c / (1 - sqrt(2 (c^2 - 1))),
///   l2 = min(max(c / (3 [1 - sqrt(2 (c^2 - 1))]), c (sqrt(2 (c + 1)/(c - 1)) + 1/3)),
///            c (sqrt(n / (2 log(d n))) + 1/3)).
/// Throws InvalidTuning for c outside (1, sqrt(1.5)) and EpsilonTooLarge when eps >= 1/2.
double epsilon_n(double c, double eta_bar, std::size_t n, std::size_t d);

/// Fraction for the covariance estimator: 2 c eta_bar + c sqrt(log(d^2 N) / (2N)), N = floor(n/2).
double epsilon_prime_n(double c_cov, double eta_bar, std::size_t n, std::size_t d);

/// phi_{a,b}(x): clamp x to [a, b]. Throws InvalidInterval if a > b.
double winsorize(double x, double a, double b);

struct WinsorInterval {
  double lower;
  double upper;
};

/// 1-based order-statistic indices ceil(eps n) and ceil((1 - eps) n).
struct OrderIndices {
  std::size_t lower;
  std::size_t upper;
};
OrderIndices winsor_indices(std::size_t n, double eps);

/// (x*_{ceil(eps n)}, x*_{ceil((1-eps) n)}) of the column, 1-based order statistics.
WinsorInterval winsor_points(std::span<const double> column, double eps);

struct WinsorPoints {
  Vector lower;
  Vector upper;
  std::size_t lower_index = 0;
  std::size_t upper_index = 0;
};

struct WinsorizedMean {
  Vector t_vec;  // n^{-1/2} sum_i phi(x_ij)
  WinsorPoints points;
};

WinsorizedMean winsorized_mean_stat(const Sample& s, double eps);

/// Rows (x_{2i} - x_{2i-1}) / sqrt(2), i = 1..floor(n/2); a trailing odd row is dropped.
Matrix pair_differences(const Sample& s);

struct RobustCovariance {
  Matrix cov;    // W^T W / N with W the winsorized pair differences
  Vector sigma;  // sqrt(diag(cov))
  Matrix corr;   // D^{-1} cov D^{-1}; rows/cols of degenerate coordinates are NaN
  std::vector<std::size_t> degenerate;  // 0-based coordinates with sigma == 0
  std::size_t n_pairs = 0;

  /// Correlation restricted to the non-degenerate coordinates.
  Matrix active_corr() const;
};

RobustCovariance robust_covariance(const Sample& s, double eps_prime);

struct RobustMoments {
  Vector t_vec;
  RobustCovariance cov;
};

/// S_{n,W} together with everything computed on the way.
struct WinsorStatistic {
  Vector coord_stats;  // T_j / sigma_j, NaN where degenerate
  double epsilon = 0.0;
  double epsilon_prime = 0.0;
  RobustMoments moments;
  std::vector<std::size_t> degenerate;
};

/// Throws EpsilonTooLarge, InvalidTuning, AllCoordinatesDegenerate.
WinsorStatistic snw_statistic(const Sample& s, const TuningConfig& cfg);

}  // namespace rmt
