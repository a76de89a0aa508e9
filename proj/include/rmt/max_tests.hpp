#pragma once

#include <cstddef>
#include <cstdint>

#include "rmt/types.hpp"
#include "rmt/winsor.hpp"

namespace rmt {

/// Rejects when ||S_n||_inf exceeds the independent-max quantile cv_diag_exact(d, alpha).
TestReport run_mean_test(const Sample& s, const TuningConfig& cfg);

/// Rejects when ||S_{n,W}||_inf exceeds cv_diag_exact(d, alpha).
TestReport run_winsor_test(const Sample& s, const TuningConfig& cfg);

/// Rejects when ||S_{n,W}||_inf exceeds the Gaussian bootstrap quantile at the
/// robust correlation of the non-degenerate coordinates.
TestReport run_winsor_boot_test(const Sample& s, const TuningConfig& cfg);

TestReport run_test(Method method, const Sample& s, const TuningConfig& cfg);

/// Finish a report from an already computed S_{n,W}. The two Winsor variants
/// share everything except the critical value, so callers running both on the
/// same data can compute the statistic once.
TestReport winsor_report(const WinsorStatistic& stat, std::size_t n, const TuningConfig& cfg);
TestReport winsor_boot_report(const WinsorStatistic& stat, std::size_t n, const TuningConfig& cfg);

struct PowerScenario {
  Matrix corr;   // correlation of the standardized observations
  Vector shift;  // sqrt(n) D^{-1} mu
  double critical_value = 0.0;
};

/// Monte Carlo estimate of P(||corr^{1/2} Z + shift||_inf > critical_value).
double gaussian_power_oracle(const PowerScenario& scn, std::size_t draws, std::uint64_t seed, unsigned threads = 1);

/// P(|Z + shift| > c) = Phi(shift - c) + Phi(-shift - c): the power under
/// all-ones correlation with a constant standardized mean.
double rank_one_power_exact(double shift, double critical_value);

}  // namespace rmt
