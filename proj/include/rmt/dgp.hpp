#pragma once

// Synthetic observations with prescribed correlation, marginal law and mean,
// and adversarial contamination of a realized sample.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rmt/types.hpp"

namespace rmt {

enum class CorrelationKind { Identity, Equicorrelated, AR1, LogDecay, RankOne };

struct CorrelationModel {
  CorrelationKind kind = CorrelationKind::Identity;
  double param = 0.0;  // rho for Equicorrelated/AR1, rho0 for LogDecay
};

/// Largest rho0 for which the LogDecay Toeplitz sequence is convex and hence
/// positive semi-definite at every dimension.
double log_decay_max_rho0();

/// Throws InvalidParameter when the model parameter is out of range.
Matrix build_correlation(std::size_t d, const CorrelationModel& model);

enum class NoiseKind { Gaussian, StudentT, SymmetrizedPareto };

/// Marginal law of the innovations, always standardized to mean 0 and variance 1.
struct NoiseLaw {
  NoiseKind kind = NoiseKind::Gaussian;
  double param = 0.0;  // degrees of freedom, or Pareto tail index; must exceed 2

  void validate() const;
};

/// Draws rows x_i = mu + diag(scale) corr^{1/2} e_i with iid standardized e_i.
/// The square root is computed once. Rows are generated in blocks with one
/// substream per block.
class SampleGenerator {
 public:
  SampleGenerator(NoiseLaw law, const Matrix& corr, Vector mu, Vector scale);

  std::size_t dim() const { return static_cast<std::size_t>(mu_.size()); }
  Sample draw(std::size_t n, std::uint64_t seed) const;

  static constexpr std::size_t kRowBlock = 256;

 private:
  NoiseLaw law_;
  Matrix root_;
  Vector mu_;
  Vector scale_;
};

Sample draw_sample(std::size_t n, std::size_t d, const NoiseLaw& law, const Matrix& corr, const Vector& mu,
                   const Vector& scale, std::uint64_t seed);

enum class ContaminationStrategy { None, GrossOutlier, MeanShiftCluster, SignFlipLargest, TailExchange };

struct ContaminationPlan {
  ContaminationStrategy strategy = ContaminationStrategy::None;
  double eta_bar = 0.0;
  double magnitude = 1e6;            // GrossOutlier: value written into the chosen coordinates
  std::vector<std::size_t> coords;   // GrossOutlier: 0-based coordinates
  Vector shift;                      // MeanShiftCluster: added to each chosen row
  std::size_t k = 0;                 // TailExchange: entries per coordinate pushed past the maximum

  void validate(std::size_t d) const;
};

/// floor(eta_bar * n): the number of rows the adversary may replace.
std::size_t contamination_budget(double eta_bar, std::size_t n);

struct Contaminated {
  Sample sample;
  std::vector<std::size_t> modified_rows;  // 0-based, ascending
};

/// Applies the plan to a realized sample; strategies may inspect the data.
///  - GrossOutlier: budget rows chosen at random get `magnitude` in `coords`.
///  - MeanShiftCluster: budget rows chosen at random are shifted by `shift`.
///  - SignFlipLargest: the budget rows with largest sup-norm are negated.
///  - TailExchange: per coordinate, the k largest entries become (column max + 1e6);
///    entries in rows not yet modified are taken only while budget remains.
Contaminated contaminate(const Sample& s, const ContaminationPlan& plan, std::uint64_t seed);

}  // namespace rmt
