#include "rmt/classic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

#include "rmt/error.hpp"
#include "rmt/sample_io.hpp"
#include "rmt/simd/kernels.hpp"

namespace rmt {

ClassicMoments sn_statistic(const Sample& s) {
  const auto findings = validate_sample(s);
  if (!findings.empty()) throw Error(ErrorKind::DomainError, "invalid sample: " + describe(findings.front()));

  const std::size_t n = s.n();
  const auto d = static_cast<Eigen::Index>(s.d());
  const double nd = static_cast<double>(n);
  ClassicMoments out;
  out.mean_vec.resize(d);
  out.sd_vec.resize(d);
  out.s_stat.resize(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const std::span<const double> col(s.column(static_cast<std::size_t>(j)), n);
    const double mean = simd::sum(col) / nd;
    const double sd = std::sqrt(simd::sum_sq_dev(col, mean) / nd);
    out.mean_vec[j] = mean;
    out.sd_vec[j] = sd;
    // A constant column can leave a rounding-level sd when its mean is inexact.
    const auto [lo, hi] = std::minmax_element(col.begin(), col.end());
    if (sd == 0.0 || *lo == *hi) {
      out.sd_vec[j] = 0.0;
      out.s_stat[j] = std::numeric_limits<double>::quiet_NaN();
      out.degenerate.push_back(static_cast<std::size_t>(j));
    } else {
      out.s_stat[j] = std::sqrt(nd) * mean / sd;
    }
  }
  return out;
}

}  // namespace rmt
