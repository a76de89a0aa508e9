#pragma once

namespace rmt {

/// Standard normal cdf.
double normal_cdf(double x);
/// Upper tail 1 - Phi(x), accurate far into the tail.
double normal_sf(double x);
/// Standard normal quantile Q(p) for p in (0, 1).
double normal_quantile(double p);
/// Q(1 - q) computed from the upper-tail probability q without cancellation.
double normal_upper_quantile(double q);

}  // namespace rmt
