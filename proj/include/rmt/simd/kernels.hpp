#pragma once

// Data-parallel inner loops used by the statistics and Monte Carlo code.
//
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2/FMA implementation. The variant is chosen once at runtime from CPUID;
// set RMT_SIMD=scalar in the environment (or call set_level) to force the
// reference path. Reductions in the vector path use a different summation
// order than the scalar path, so results agree to rounding, not bit for bit.
// Within one level every kernel is deterministic.

#include <cstddef>
#include <span>
#include <string_view>

namespace rmt::simd {

enum class Level { Scalar, Avx2 };

struct KernelTable {
  Level level;
  double (*sum)(const double* x, std::size_t n);
  /// sum_i clamp(x_i, lo, hi)
  double (*clamp_sum)(const double* x, std::size_t n, double lo, double hi);
  /// out_i = clamp(x_i, lo, hi)
  void (*clamp_copy)(const double* x, std::size_t n, double lo, double hi, double* out);
  double (*dot)(const double* a, const double* b, std::size_t n);
  /// sum_i (x_i - center)^2
  double (*sum_sq_dev)(const double* x, std::size_t n, double center);
  /// y_i += a * x_i
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  /// max_i |y_i + shift_i|; shift may be null (treated as zero)
  double (*max_abs_shifted)(const double* y, const double* shift, std::size_t n);
};

std::string_view to_string(Level level);

bool avx2_supported();
/// The table for a specific level; throws if that level is unavailable.
const KernelTable& table(Level level);
/// The table currently in use.
const KernelTable& active();
Level active_level();
void set_level(Level level);

inline double sum(std::span<const double> x) { return active().sum(x.data(), x.size()); }
inline double clamp_sum(std::span<const double> x, double lo, double hi) {
  return active().clamp_sum(x.data(), x.size(), lo, hi);
}
inline void clamp_copy(std::span<const double> x, double lo, double hi, std::span<double> out) {
  active().clamp_copy(x.data(), x.size(), lo, hi, out.data());
}
inline double dot(std::span<const double> a, std::span<const double> b) {
  return active().dot(a.data(), b.data(), a.size());
}
inline double sum_sq_dev(std::span<const double> x, double center) {
  return active().sum_sq_dev(x.data(), x.size(), center);
}
inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  active().axpy(a, x.data(), y.data(), x.size());
}
inline double max_abs_shifted(std::span<const double> y, const double* shift) {
  return active().max_abs_shifted(y.data(), shift, y.size());
}

namespace detail {
extern const KernelTable scalar_table;
#ifdef RMT_HAVE_AVX2_KERNELS
extern const KernelTable avx2_table;
#endif
}  // namespace detail

}  // namespace rmt::simd
