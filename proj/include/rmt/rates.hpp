#pragma once

// Error-rate expressions of the asymptotic theory evaluated with every
// unspecified constant equal to one. Shape indicators only.

#include <cstddef>
#include <string>
#include <vector>

namespace rmt {

struct RateInputs {
  std::size_t n = 0;
  std::size_t d = 0;
  double m = 0.0;
  double eta_bar = 0.0;
  double xi = 0.5;

  /// Throws DomainError unless n >= 3, d >= 2, m > 2, eta_bar in [0, 1/2), xi in (0, 1).
  void validate() const;
};

struct RateReport {
  double a = 0.0;       // Gaussian approximation rate for sums
  double b = 0.0;       // covariance estimation rate
  double c_rate = 0.0;  // standardized-sum approximation
  double d_rate = 0.0;  // winsorization bias term
  double f = 0.0;
  double e = 0.0;       // winsorized-sum approximation, f + sqrt(log d log dn) d_rate
  double s_n = 0.0;     // log(d) sqrt(d_rate)
  double cond_contam = 0.0;      // sqrt(n log d) eta^{1 - 1/m}
  double cond_dim_winsor = 0.0;  // log d / n^{(m-2)/(5m-2)}
  double cond_dim_mean = 0.0;    // d / n^{m/2 - 1 - xi}
  bool moments_sufficient = false;  // m > 4: a, b and c are only meaningful then
};

RateReport rate_report(const RateInputs& in);

enum class Traffic { Small, Moderate, Large };
std::string to_string(Traffic t);
Traffic classify(double value);  // < 0.1 small, < 1 moderate, otherwise large

struct ConditionVerdict {
  std::string name;
  double value = 0.0;
  Traffic tag = Traffic::Small;
};

std::vector<ConditionVerdict> check_theorem_conditions(const RateInputs& in);

}  // namespace rmt
