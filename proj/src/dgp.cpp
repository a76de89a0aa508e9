#include "rmt/dgp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <span>
#include <string>

#include <boost/random/normal_distribution.hpp>
#include <boost/random/student_t_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>

#include "rmt/critical.hpp"
#include "rmt/error.hpp"
#include "rmt/seeding.hpp"
#include "rmt/simd/kernels.hpp"

namespace rmt {
namespace {

constexpr double kTailPush = 1e6;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidParameter, what); }

// Uniform on (0, 1] from the top 53 bits.
double uniform_open0(std::mt19937_64& eng) {
  return (static_cast<double>(eng() >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace

double log_decay_max_rho0() {
  // Convexity at lag 1: 1 - 2 r1 + r2 >= 0 with r_l = rho0 / log(l + 2); later lags are convex already.
  return 1.0 / (2.0 / std::log(3.0) - 1.0 / std::log(4.0));
}

Matrix build_correlation(std::size_t d, const CorrelationModel& model) {
  if (d < 1) bad("d must be positive");
  const auto n = static_cast<Eigen::Index>(d);
  const double p = model.param;
  switch (model.kind) {
    case CorrelationKind::Identity:
      return Matrix::Identity(n, n);
    case CorrelationKind::RankOne:
      return Matrix::Ones(n, n);
    case CorrelationKind::Equicorrelated: {
      if (!(p >= 0.0 && p < 1.0)) bad("equicorrelation rho must lie in [0, 1)");
      Matrix m = Matrix::Constant(n, n, p);
      m.diagonal().setOnes();
      return m;
    }
    case CorrelationKind::AR1: {
      if (!(p > -1.0 && p < 1.0)) bad("AR(1) rho must lie in (-1, 1)");
      Matrix m(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = std::pow(p, static_cast<double>(std::abs(i - j)));
      }
      return m;
    }
    case CorrelationKind::LogDecay: {
      if (!(p >= 0.0 && p <= log_decay_max_rho0())) {
        bad("log-decay rho0 must lie in [0, " + std::to_string(log_decay_max_rho0()) + "]");
      }
      Matrix m(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
          m(i, j) = i == j ? 1.0 : p / std::log(static_cast<double>(std::abs(i - j)) + 2.0);
        }
      }
      return m;
    }
  }
  bad("unknown correlation model");
}

void NoiseLaw::validate() const {
  if (kind != NoiseKind::Gaussian && !(param > 2.0 && std::isfinite(param))) {
    bad("heavy-tailed noise needs a parameter > 2 for finite variance");
  }
}

SampleGenerator::SampleGenerator(NoiseLaw law, const Matrix& corr, Vector mu, Vector scale)
    : law_(law), mu_(std::move(mu)), scale_(std::move(scale)) {
  law_.validate();
  if (corr.rows() != mu_.size() || scale_.size() != mu_.size()) bad("corr, mu and scale dimensions differ");
  if (!mu_.allFinite()) bad("mu must be finite");
  for (Eigen::Index j = 0; j < scale_.size(); ++j) {
    if (!(scale_[j] > 0.0) || !std::isfinite(scale_[j])) bad("scale entries must be positive");
  }
  root_ = psd_sqrt(corr).root;
}

Sample SampleGenerator::draw(std::size_t n, std::uint64_t seed) const {
  const std::size_t d = dim();
  const auto nn = static_cast<Eigen::Index>(n);
  const auto dd = static_cast<Eigen::Index>(d);
  Matrix e(nn, dd);

  const double t_norm = law_.kind == NoiseKind::StudentT ? std::sqrt((law_.param - 2.0) / law_.param) : 1.0;
  const double p_norm = law_.kind == NoiseKind::SymmetrizedPareto ? std::sqrt((law_.param - 2.0) / law_.param) : 1.0;
  for (std::size_t b = 0; b * kRowBlock < n; ++b) {
    std::mt19937_64 eng(substream(seed, b));
    boost::random::normal_distribution<double> normal;
    boost::random::student_t_distribution<double> student(law_.kind == NoiseKind::StudentT ? law_.param : 3.0);
    const std::size_t end = std::min(n, (b + 1) * kRowBlock);
    for (std::size_t i = b * kRowBlock; i < end; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        double v = 0.0;
        switch (law_.kind) {
          case NoiseKind::Gaussian: v = normal(eng); break;
          case NoiseKind::StudentT: v = student(eng) * t_norm; break;
          case NoiseKind::SymmetrizedPareto: {
            const bool negative = (eng() >> 63) != 0;
            const double magnitude = std::pow(uniform_open0(eng), -1.0 / law_.param);  // Pareto, x_m = 1
            v = (negative ? -magnitude : magnitude) * p_norm;
            break;
          }
        }
        e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      }
    }
  }

  // Column j of E R is sum_k R_kj e_k (R symmetric).
  Matrix x = Matrix::Zero(nn, dd);
  for (Eigen::Index j = 0; j < dd; ++j) {
    std::span<double> out(x.col(j).data(), n);
    for (Eigen::Index k = 0; k < dd; ++k) {
      const double r = root_(k, j);
      if (r != 0.0) simd::axpy(r, std::span<const double>(e.col(k).data(), n), out);
    }
    x.col(j) = (x.col(j).array() * scale_[j] + mu_[j]).matrix();
  }
  return Sample(std::move(x));
}

Sample draw_sample(std::size_t n, std::size_t d, const NoiseLaw& law, const Matrix& corr, const Vector& mu,
                   const Vector& scale, std::uint64_t seed) {
  if (static_cast<std::size_t>(mu.size()) != d) bad("mu length differs from d");
  return SampleGenerator(law, corr, mu, scale).draw(n, seed);
}

void ContaminationPlan::validate(std::size_t d) const {
  if (!(eta_bar >= 0.0 && eta_bar < 0.5)) bad("contamination eta_bar must lie in [0, 1/2)");
  switch (strategy) {
    case ContaminationStrategy::GrossOutlier:
      if (!std::isfinite(magnitude)) bad("outlier magnitude must be finite");
      for (auto j : coords) {
        if (j >= d) bad("outlier coordinate out of range");
      }
      break;
    case ContaminationStrategy::MeanShiftCluster:
      if (static_cast<std::size_t>(shift.size()) != d || !shift.allFinite()) bad("cluster shift must be a finite length-d vector");
      break;
    default:
      break;
  }
}

std::size_t contamination_budget(double eta_bar, std::size_t n) {
  // The small guard keeps decimal inputs such as 0.29 * 100 from flooring to 28.
  return static_cast<std::size_t>(std::floor(eta_bar * static_cast<double>(n) + 1e-9));
}

Contaminated contaminate(const Sample& s, const ContaminationPlan& plan, std::uint64_t seed) {
  plan.validate(s.d());
  const std::size_t n = s.n(), d = s.d();
  const std::size_t budget = std::min(contamination_budget(plan.eta_bar, n), n);
  Matrix x = s.data();
  std::mt19937_64 eng(seed);

  auto random_rows = [&](std::size_t count) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < count; ++i) {
      boost::random::uniform_int_distribution<std::size_t> pick(i, n - 1);
      std::swap(idx[i], idx[pick(eng)]);
    }
    idx.resize(count);
    return idx;
  };

  if (budget > 0) {
    switch (plan.strategy) {
      case ContaminationStrategy::None:
        break;
      case ContaminationStrategy::GrossOutlier:
        for (auto i : random_rows(budget)) {
          for (auto j : plan.coords) x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = plan.magnitude;
        }
        break;
      case ContaminationStrategy::MeanShiftCluster:
        for (auto i : random_rows(budget)) x.row(static_cast<Eigen::Index>(i)) += plan.shift.transpose();
        break;
      case ContaminationStrategy::SignFlipLargest: {
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        const Vector sup = s.data().cwiseAbs().rowwise().maxCoeff();
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
          return sup[static_cast<Eigen::Index>(a)] > sup[static_cast<Eigen::Index>(b)];
        });
        for (std::size_t r = 0; r < budget; ++r) x.row(static_cast<Eigen::Index>(idx[r])) *= -1.0;
        break;
      }
      case ContaminationStrategy::TailExchange: {
        std::vector<char> used(n, 0);
        std::size_t rows_used = 0;
        const std::size_t k = std::min(plan.k, n);
        for (std::size_t j = 0; j < d; ++j) {
          const double* col = s.column(j);
          std::vector<std::size_t> idx(n);
          std::iota(idx.begin(), idx.end(), std::size_t{0});
          std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return col[a] > col[b]; });
          const double target = col[idx.front()] + kTailPush;
          for (std::size_t r = 0; r < k; ++r) {
            const std::size_t i = idx[r];
            if (!used[i]) {
              if (rows_used == budget) continue;
              used[i] = 1;
              ++rows_used;
            }
            x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = target;
          }
        }
        break;
      }
    }
  }

  Contaminated out;
  for (std::size_t i = 0; i < n; ++i) {
    if (x.row(static_cast<Eigen::Index>(i)) != s.data().row(static_cast<Eigen::Index>(i))) out.modified_rows.push_back(i);
  }
  if (out.modified_rows.size() > budget) {
    throw Error(ErrorKind::InvalidParameter, "contamination exceeded its row budget");
  }
  out.sample = Sample(std::move(x));
  return out;
}

}  // namespace rmt
