#include "rmt/winsor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rmt/error.hpp"
#include "rmt/sample_io.hpp"
#include "rmt/simd/kernels.hpp"

namespace rmt {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_fraction(double eps, const char* what) {
  if (!(eps > 0.0 && eps < 0.5)) {
    throw Error(ErrorKind::DomainError, std::string(what) + " must lie in (0, 1/2), got " + std::to_string(eps));
  }
}

void require_valid(const Sample& s) {
  const auto findings = validate_sample(s);
  if (!findings.empty()) throw Error(ErrorKind::DomainError, "invalid sample: " + describe(findings.front()));
}

std::string fmt_eps(double v) { return std::to_string(v); }

}  // namespace

double epsilon_n(double c, double eta_bar, std::size_t n, std::size_t d) {
  if (!(c > 1.0 && c < std::sqrt(1.5))) {
    throw Error(ErrorKind::InvalidTuning, "c must lie in (1, sqrt(1.5)), got " + std::to_string(c));
  }
  if (!(eta_bar >= 0.0 && eta_bar < 0.5)) throw Error(ErrorKind::InvalidTuning, "eta_bar must lie in [0, 1/2)");
  if (n < 2 || d < 1) throw Error(ErrorKind::DomainError, "epsilon_n needs n >= 2 and d >= 1");

  const double nd = static_cast<double>(n);
  const double log_dn = std::log(static_cast<double>(d) * nd);
  const double root = 1.0 - std::sqrt(2.0 * (c * c - 1.0));
  const double lambda1 = c / root;
  const double lambda2 = std::min(std::max(c / (3.0 * root), c * (std::sqrt(2.0 * (c + 1.0) / (c - 1.0)) + 1.0 / 3.0)),
                                  c * (std::sqrt(nd / (2.0 * log_dn)) + 1.0 / 3.0));
  const double eps = lambda1 * eta_bar + lambda2 * log_dn / nd;
  if (!(eps < 0.5)) {
    throw Error(ErrorKind::EpsilonTooLarge,
                "winsorization fraction " + fmt_eps(eps) + " >= 1/2 for n=" + std::to_string(n) + ", d=" + std::to_string(d));
  }
  return eps;
}

double epsilon_prime_n(double c_cov, double eta_bar, std::size_t n, std::size_t d) {
  if (!(c_cov > 1.0) || !std::isfinite(c_cov)) throw Error(ErrorKind::InvalidTuning, "c_cov must exceed 1");
  if (!(eta_bar >= 0.0 && eta_bar < 0.5)) throw Error(ErrorKind::InvalidTuning, "eta_bar must lie in [0, 1/2)");
  const std::size_t pairs = n / 2;
  if (pairs < 1 || d < 1) throw Error(ErrorKind::DomainError, "epsilon_prime_n needs n >= 2 and d >= 1");

  const double big_n = static_cast<double>(pairs);
  const double dd = static_cast<double>(d);
  const double eps = 2.0 * c_cov * eta_bar + c_cov * std::sqrt(std::log(dd * dd * big_n) / (2.0 * big_n));
  if (!(eps < 0.5)) {
    throw Error(ErrorKind::EpsilonTooLarge,
                "covariance winsorization fraction " + fmt_eps(eps) + " >= 1/2 for n=" + std::to_string(n) +
                    ", d=" + std::to_string(d));
  }
  return eps;
}

double winsorize(double x, double a, double b) {
  if (a > b) throw Error(ErrorKind::InvalidInterval, "lower point exceeds upper point");
  if (x < a) return a;
  if (x > b) return b;
  return x;
}

OrderIndices winsor_indices(std::size_t n, double eps) {
  require_fraction(eps, "winsorization fraction");
  const double nd = static_cast<double>(n);
  const auto lower = static_cast<std::size_t>(std::ceil(eps * nd));
  const auto upper = static_cast<std::size_t>(std::ceil((1.0 - eps) * nd));
  return {std::clamp<std::size_t>(lower, 1, n), std::clamp<std::size_t>(upper, 1, n)};
}

WinsorInterval winsor_points(std::span<const double> column, double eps) {
  if (column.size() < 2) throw Error(ErrorKind::DomainError, "winsor_points needs at least two values");
  const auto idx = winsor_indices(column.size(), eps);
  // Selection returns the same values as a full stable sort would at these ranks.
  std::vector<double> work(column.begin(), column.end());
  const auto lo_it = work.begin() + static_cast<std::ptrdiff_t>(idx.lower - 1);
  std::nth_element(work.begin(), lo_it, work.end());
  const double lower = *lo_it;
  const auto hi_it = work.begin() + static_cast<std::ptrdiff_t>(idx.upper - 1);
  std::nth_element(lo_it, hi_it, work.end());
  return {lower, *hi_it};
}

WinsorizedMean winsorized_mean_stat(const Sample& s, double eps) {
  require_valid(s);
  const std::size_t n = s.n(), d = s.d();
  const auto idx = winsor_indices(n, eps);
  WinsorizedMean out;
  out.t_vec.resize(static_cast<Eigen::Index>(d));
  out.points.lower.resize(static_cast<Eigen::Index>(d));
  out.points.upper.resize(static_cast<Eigen::Index>(d));
  out.points.lower_index = idx.lower;
  out.points.upper_index = idx.upper;
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t j = 0; j < d; ++j) {
    const std::span<const double> col(s.column(j), n);
    const auto [lo, hi] = winsor_points(col, eps);
    const auto jj = static_cast<Eigen::Index>(j);
    out.points.lower[jj] = lo;
    out.points.upper[jj] = hi;
    out.t_vec[jj] = simd::clamp_sum(col, lo, hi) * inv_sqrt_n;
  }
  return out;
}

Matrix pair_differences(const Sample& s) {
  if (s.n() < 2) throw Error(ErrorKind::DomainError, "pair differences need n >= 2");
  const auto pairs = static_cast<Eigen::Index>(s.n() / 2);
  const auto d = static_cast<Eigen::Index>(s.d());
  const Matrix& x = s.data();
  Matrix y(pairs, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < pairs; ++i) y(i, j) = (x(2 * i + 1, j) - x(2 * i, j)) / std::numbers::sqrt2;
  }
  return y;
}

Matrix RobustCovariance::active_corr() const {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < sigma.size(); ++j) {
    if (!std::binary_search(degenerate.begin(), degenerate.end(), static_cast<std::size_t>(j))) keep.push_back(j);
  }
  Matrix out(static_cast<Eigen::Index>(keep.size()), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t a = 0; a < keep.size(); ++a) {
    for (std::size_t b = 0; b < keep.size(); ++b) {
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = corr(keep[a], keep[b]);
    }
  }
  return out;
}

RobustCovariance robust_covariance(const Sample& s, double eps_prime) {
  require_valid(s);
  require_fraction(eps_prime, "covariance winsorization fraction");
  const std::size_t pairs = s.n() / 2;
  if (pairs < 2) throw Error(ErrorKind::DomainError, "robust covariance needs at least two observation pairs");
  const std::size_t d = s.d();
  const auto dd = static_cast<Eigen::Index>(d);
  const auto nn = static_cast<Eigen::Index>(pairs);

  const Matrix y = pair_differences(s);
  Matrix w(nn, dd);
  for (Eigen::Index j = 0; j < dd; ++j) {
    const std::span<const double> col(y.col(j).data(), pairs);
    const auto [lo, hi] = winsor_points(col, eps_prime);
    simd::clamp_copy(col, lo, hi, std::span<double>(w.col(j).data(), pairs));
  }

  RobustCovariance out;
  out.n_pairs = pairs;
  out.cov.resize(dd, dd);
  const double inv_n = 1.0 / static_cast<double>(pairs);
  for (Eigen::Index j = 0; j < dd; ++j) {
    const std::span<const double> wj(w.col(j).data(), pairs);
    for (Eigen::Index k = j; k < dd; ++k) {
      const double v = simd::dot(wj, std::span<const double>(w.col(k).data(), pairs)) * inv_n;
      out.cov(j, k) = v;
      out.cov(k, j) = v;
    }
  }

  out.sigma = out.cov.diagonal().cwiseSqrt();
  for (std::size_t j = 0; j < d; ++j) {
    if (out.sigma[static_cast<Eigen::Index>(j)] == 0.0) out.degenerate.push_back(j);
  }

  out.corr = Matrix::Constant(dd, dd, kNaN);
  for (Eigen::Index j = 0; j < dd; ++j) {
    if (out.sigma[j] == 0.0) continue;
    out.corr(j, j) = 1.0;
    for (Eigen::Index k = j + 1; k < dd; ++k) {
      if (out.sigma[k] == 0.0) continue;
      // sqrt(v * v) == v exactly, so identical columns give a correlation of exactly one.
      const double r = out.cov(j, k) / std::sqrt(out.cov(j, j) * out.cov(k, k));
      out.corr(j, k) = r;
      out.corr(k, j) = r;
    }
  }
  return out;
}

WinsorStatistic snw_statistic(const Sample& s, const TuningConfig& cfg) {
  cfg.validate();
  require_valid(s);
  WinsorStatistic out;
  out.epsilon = epsilon_n(cfg.c, cfg.eta_bar, s.n(), s.d());
  out.epsilon_prime = epsilon_prime_n(cfg.c_cov, cfg.eta_bar, s.n(), s.d());

  auto mean = winsorized_mean_stat(s, out.epsilon);
  out.moments.t_vec = std::move(mean.t_vec);
  out.moments.cov = robust_covariance(s, out.epsilon_prime);
  out.degenerate = out.moments.cov.degenerate;
  if (out.degenerate.size() == s.d()) {
    throw Error(ErrorKind::AllCoordinatesDegenerate, "every coordinate has zero robust scale");
  }

  const auto d = static_cast<Eigen::Index>(s.d());
  out.coord_stats.resize(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const double sigma = out.moments.cov.sigma[j];
    out.coord_stats[j] = sigma == 0.0 ? kNaN : out.moments.t_vec[j] / sigma;
  }
  return out;
}

}  // namespace rmt
