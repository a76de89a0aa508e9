#pragma once

#include <vector>

#include "rmt/types.hpp"

namespace rmt {

/// Self-normalized arithmetic means S_{n,j} = sqrt(n) xbar_j / s_j with the
/// biased variance s_j^2 = n^{-1} sum_i (x_ij - xbar_j)^2.
struct ClassicMoments {
  Vector mean_vec;
  Vector sd_vec;
  Vector s_stat;  // NaN on degenerate coordinates
  std::vector<std::size_t> degenerate;  // 0-based, constant columns
};

ClassicMoments sn_statistic(const Sample& s);

}  // namespace rmt
