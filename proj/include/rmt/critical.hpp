#pragma once

// Critical values for max-tests: the independent-coordinate Gaussian max
// quantile (exact and asymptotic), Gumbel normalizing constants, and Monte
// Carlo quantiles of sup-norms of correlated Gaussian vectors.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rmt/types.hpp"

namespace rmt {

/// (1 - alpha)-quantile of max_j |Z_j| for d independent standard normals:
/// Q((1 + (1 - alpha)^{1/d}) / 2), evaluated from the upper tail.
double cv_diag_exact(std::size_t d, double alpha);

/// sqrt(2 log d) - (log log d + log 4pi) / (2 sqrt(2 log d)) - log(-log(1 - alpha)/2) / sqrt(2 log d).
/// Requires d >= 3.
double cv_diag_expansion(std::size_t d, double alpha);

/// P(max_j |Z_j| <= c) = (2 Phi(c) - 1)^d.
double diag_max_cdf(std::size_t d, double c);

struct GumbelConstants {
  double a_d;
  double b_d;
};

/// a_d = sqrt(2 log d), b_d = a_d - (log log d + log 4pi) / (2 a_d). Requires d >= 3.
GumbelConstants gumbel_constants(std::size_t d);

/// exp(-2 exp(-x)), the limit law of a_d (max_j |Z_j| - b_d).
double gumbel_limit_cdf(double x);

struct PSDRoot {
  Matrix root;
  std::size_t clipped_eigs = 0;
};

/// Symmetric PSD square root via eigendecomposition; negative eigenvalues are
/// floored at zero and counted. Throws NotSymmetric, EigenFailure.
PSDRoot psd_sqrt(const Matrix& a, double tol = 1e-10);

/// Draws of ||R z + shift||_inf for z ~ N(0, I) and R = corr^{1/2}.
///
/// Draws are produced in fixed-size blocks; block k uses substream(seed, k),
/// so the output is identical for any thread count.
class GaussianSupNorm {
 public:
  explicit GaussianSupNorm(const Matrix& corr);

  std::size_t dim() const { return static_cast<std::size_t>(root_.rows()); }
  const Matrix& root() const { return root_; }

  std::vector<double> draw(std::size_t draws, std::uint64_t seed, const Vector* shift = nullptr,
                           unsigned threads = 1) const;

  static constexpr std::size_t kBlock = 512;

 private:
  Matrix root_;
};

/// ceil((1 - alpha) B)-th smallest of B values (1-based), as a 0-based rank.
std::size_t upper_quantile_rank(std::size_t draws, double alpha);

/// Monte Carlo (1 - alpha)-quantile of ||corr^{1/2} Z||_inf. Requires draws >= 100.
double mc_sup_quantile(const Matrix& corr, double alpha, std::size_t draws, std::uint64_t seed,
                       unsigned threads = 1);

/// Gaussian bootstrap critical value at the estimated correlation. Throws
/// DegenerateCorrelation unless the diagonal is one (within 1e-8).
double bootstrap_cv(const Matrix& corr_tilde, double alpha, std::size_t draws, std::uint64_t seed,
                    unsigned threads = 1);

}  // namespace rmt
