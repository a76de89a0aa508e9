#include "rmt/rates.hpp"

#include <cmath>

#include "rmt/error.hpp"

namespace rmt {

void RateInputs::validate() const {
  auto fail = [](const char* what) { throw Error(ErrorKind::DomainError, what); };
  if (n < 3) fail("n must be at least 3");
  if (d < 2) fail("d must be at least 2");
  if (!(m > 2.0) || !std::isfinite(m)) fail("m must exceed 2");
  if (!(eta_bar >= 0.0 && eta_bar < 0.5)) fail("eta_bar must lie in [0, 1/2)");
  if (!(xi > 0.0 && xi < 1.0)) fail("xi must lie in (0, 1)");
}

RateReport rate_report(const RateInputs& in) {
  in.validate();
  const double n = static_cast<double>(in.n);
  const double d = static_cast<double>(in.d);
  const double m = in.m;
  const double eta = in.eta_bar;
  const double log_d = std::log(d);
  const double log_n = std::log(n);
  const double log_dn = std::log(d * n);
  const double r = log_dn / n;

  RateReport out;
  out.moments_sufficient = m > 4.0;

  out.a = r + std::sqrt(r) + std::pow(d * log_n, 2.0 / m) / std::pow(n, 1.0 - 2.0 / m);

  const double d2m = std::pow(d, 2.0 / m);
  out.b = std::pow(d2m * std::pow(log_d, 5.0) / n, 0.25) +
          std::sqrt(d2m * std::pow(log_d, 3.0 - 2.0 / m) / std::pow(n, 1.0 - 2.0 / m));

  const double mix = std::sqrt(log_d * log_dn);
  out.c_rate = mix * out.a + out.b;

  out.d_rate = std::pow(eta, 1.0 - 2.0 / m) + std::pow(r, 0.5 - 1.0 / m);

  out.f = std::pow(std::pow(log_dn, 5.0 - 2.0 / m) / std::pow(n, 1.0 - 2.0 / m), 0.25) +
          (std::pow(eta, 1.0 - 1.0 / m) + std::pow(r, 1.0 - 1.0 / m)) * std::sqrt(n * log_d) +
          std::sqrt(log_d * log_d * (std::pow(eta, 1.0 - 2.0 / m) + std::pow(r, 1.0 - 2.0 / m)));
  out.e = out.f + mix * out.d_rate;

  out.s_n = log_d * std::sqrt(out.d_rate);

  out.cond_contam = std::sqrt(n * log_d) * std::pow(eta, 1.0 - 1.0 / m);
  out.cond_dim_winsor = log_d / std::pow(n, (m - 2.0) / (5.0 * m - 2.0));
  out.cond_dim_mean = d / std::pow(n, m / 2.0 - 1.0 - in.xi);
  return out;
}

std::string to_string(Traffic t) {
  switch (t) {
    case Traffic::Small: return "small";
    case Traffic::Moderate: return "moderate";
    case Traffic::Large: return "large";
  }
  return "unknown";
}

Traffic classify(double value) {
  if (value < 0.1) return Traffic::Small;
  if (value < 1.0) return Traffic::Moderate;
  return Traffic::Large;
}

std::vector<ConditionVerdict> check_theorem_conditions(const RateInputs& in) {
  const auto r = rate_report(in);
  return {
      {"cond_contam", r.cond_contam, classify(r.cond_contam)},
      {"cond_dim_winsor", r.cond_dim_winsor, classify(r.cond_dim_winsor)},
      {"cond_dim_mean", r.cond_dim_mean, classify(r.cond_dim_mean)},
  };
}

}  // namespace rmt
