#include "rmt/normal.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>

#include "rmt/error.hpp"

namespace rmt {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_sf(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorKind::DomainError, "normal quantile needs p in (0, 1)");
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

double normal_upper_quantile(double q) {
  if (!(q > 0.0 && q < 1.0)) throw Error(ErrorKind::DomainError, "normal quantile needs q in (0, 1)");
  return std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * q);
}

}  // namespace rmt
