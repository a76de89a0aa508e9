#include <algorithm>
#include <cmath>

#include "rmt/simd/kernels.hpp"

namespace rmt::simd::detail {
namespace {

double sum_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

double clamp_sum_scalar(const double* x, std::size_t n, double lo, double hi) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::min(std::max(x[i], lo), hi);
  return s;
}

void clamp_copy_scalar(const double* x, std::size_t n, double lo, double hi, double* out) {
  for (std::size_t i = 0; i < n; ++i) out[i] = std::min(std::max(x[i], lo), hi);
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_sq_dev_scalar(const double* x, std::size_t n, double center) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = x[i] - center;
    s += r * r;
  }
  return s;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double max_abs_shifted_scalar(const double* y, const double* shift, std::size_t n) {
  double m = 0.0;
  if (shift) {
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(y[i] + shift[i]));
  } else {
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(y[i]));
  }
  return m;
}

}  // namespace

const KernelTable scalar_table{
    Level::Scalar,     sum_scalar, clamp_sum_scalar, clamp_copy_scalar, dot_scalar, sum_sq_dev_scalar,
    axpy_scalar,       max_abs_shifted_scalar,
};

}  // namespace rmt::simd::detail
