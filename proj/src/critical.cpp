#include "rmt/critical.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <thread>

#include <boost/random/normal_distribution.hpp>

#include "rmt/error.hpp"
#include "rmt/normal.hpp"
#include "rmt/seeding.hpp"
#include "rmt/simd/kernels.hpp"

namespace rmt {
namespace {

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::DomainError, "alpha must lie in (0, 1)");
}

void require_d3(std::size_t d) {
  if (d < 3) throw Error(ErrorKind::DomainError, "needs d >= 3 so that log log d is defined and positive");
}

}  // namespace

double cv_diag_exact(std::size_t d, double alpha) {
  require_alpha(alpha);
  if (d < 1) throw Error(ErrorKind::DomainError, "d must be positive");
  // Per-coordinate two-sided tail: 1 - (1 - alpha)^{1/d}, then halved.
  const double two_sided = -std::expm1(std::log1p(-alpha) / static_cast<double>(d));
  return normal_upper_quantile(0.5 * two_sided);
}

double cv_diag_expansion(std::size_t d, double alpha) {
  require_alpha(alpha);
  require_d3(d);
  const double log_d = std::log(static_cast<double>(d));
  const double root = std::sqrt(2.0 * log_d);
  return root - (std::log(log_d) + std::log(4.0 * std::numbers::pi)) / (2.0 * root) -
         std::log(-std::log1p(-alpha) / 2.0) / root;
}

double diag_max_cdf(std::size_t d, double c) {
  if (c <= 0.0) return 0.0;
  const double inside = -2.0 * normal_sf(c);  // log of (1 - 2 sf) via log1p
  return std::exp(static_cast<double>(d) * std::log1p(inside));
}

GumbelConstants gumbel_constants(std::size_t d) {
  require_d3(d);
  const double log_d = std::log(static_cast<double>(d));
  const double a = std::sqrt(2.0 * log_d);
  return {a, a - (std::log(log_d) + std::log(4.0 * std::numbers::pi)) / (2.0 * a)};
}

double gumbel_limit_cdf(double x) { return std::exp(-2.0 * std::exp(-x)); }

PSDRoot psd_sqrt(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::DomainError, "matrix must be square");
  if (!a.allFinite()) throw Error(ErrorKind::DomainError, "matrix has non-finite entries");
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol) throw Error(ErrorKind::NotSymmetric, "max |a_jk - a_kj| = " + std::to_string(asym));

  const Matrix sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
  if (eig.info() != Eigen::Success) throw Error(ErrorKind::EigenFailure, "eigendecomposition did not converge");

  PSDRoot out;
  Vector lambda = eig.eigenvalues();
  // Eigenvalues at round-off level are zeroed so rank-deficient inputs keep an exact root.
  const double floor = static_cast<double>(lambda.size()) * std::numeric_limits<double>::epsilon() *
                       std::max(1.0, lambda.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda[i] < 0.0) ++out.clipped_eigs;
    if (lambda[i] < floor) lambda[i] = 0.0;
  }
  const Matrix& v = eig.eigenvectors();
  out.root = v * lambda.cwiseSqrt().asDiagonal() * v.transpose();
  out.root = 0.5 * (out.root + out.root.transpose()).eval();
  return out;
}

GaussianSupNorm::GaussianSupNorm(const Matrix& corr) : root_(psd_sqrt(corr).root) {}

std::vector<double> GaussianSupNorm::draw(std::size_t draws, std::uint64_t seed, const Vector* shift,
                                          unsigned threads) const {
  const std::size_t d = dim();
  if (shift && static_cast<std::size_t>(shift->size()) != d) {
    throw Error(ErrorKind::DomainError, "shift length does not match the correlation dimension");
  }
  std::vector<double> out(draws);
  const std::size_t blocks = (draws + kBlock - 1) / kBlock;
  const double* shift_ptr = shift ? shift->data() : nullptr;

  auto run_block = [&](std::size_t b, std::vector<double>& z, std::vector<double>& y) {
    std::mt19937_64 eng(substream(seed, b));
    boost::random::normal_distribution<double> normal;
    const std::size_t end = std::min(draws, (b + 1) * kBlock);
    for (std::size_t r = b * kBlock; r < end; ++r) {
      for (auto& v : z) v = normal(eng);
      std::fill(y.begin(), y.end(), 0.0);
      for (std::size_t k = 0; k < d; ++k) {
        simd::axpy(z[k], std::span<const double>(root_.col(static_cast<Eigen::Index>(k)).data(), d), y);
      }
      out[r] = simd::max_abs_shifted(y, shift_ptr);
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(blocks, 1))));
  if (workers == 1) {
    std::vector<double> z(d), y(d);
    for (std::size_t b = 0; b < blocks; ++b) run_block(b, z, y);
    return out;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      std::vector<double> z(d), y(d);
      for (std::size_t b = t; b < blocks; b += workers) run_block(b, z, y);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

std::size_t upper_quantile_rank(std::size_t draws, double alpha) {
  require_alpha(alpha);
  // Guard against (1 - alpha) * B landing a few ulps above an integer.
  const double target = (1.0 - alpha) * static_cast<double>(draws) * (1.0 - 1e-12);
  const auto k = static_cast<std::size_t>(std::ceil(target));
  return std::clamp<std::size_t>(k, 1, draws) - 1;
}

double mc_sup_quantile(const Matrix& corr, double alpha, std::size_t draws, std::uint64_t seed, unsigned threads) {
  require_alpha(alpha);
  if (draws < 100) throw Error(ErrorKind::DomainError, "need at least 100 Monte Carlo draws");
  const GaussianSupNorm sampler(corr);
  auto sups = sampler.draw(draws, seed, nullptr, threads);
  const auto rank = upper_quantile_rank(draws, alpha);
  std::nth_element(sups.begin(), sups.begin() + static_cast<std::ptrdiff_t>(rank), sups.end());
  return sups[rank];
}

double bootstrap_cv(const Matrix& corr_tilde, double alpha, std::size_t draws, std::uint64_t seed, unsigned threads) {
  if (corr_tilde.rows() == 0 || corr_tilde.rows() != corr_tilde.cols()) {
    throw Error(ErrorKind::DegenerateCorrelation, "correlation matrix is empty or not square");
  }
  for (Eigen::Index j = 0; j < corr_tilde.rows(); ++j) {
    if (!(std::abs(corr_tilde(j, j) - 1.0) <= 1e-8)) {
      throw Error(ErrorKind::DegenerateCorrelation, "diagonal entry " + std::to_string(j + 1) + " is not one",
                  {static_cast<std::size_t>(j + 1)});
    }
  }
  return mc_sup_quantile(corr_tilde, alpha, draws, seed, threads);
}

}  // namespace rmt
