// Compiled with -mavx2 -mfma; only reached after a CPUID check.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "rmt/simd/kernels.hpp"

namespace rmt::simd::detail {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

inline __m256d abs_pd(__m256d v) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v); }

// Two independent accumulators of four lanes each hide the add latency.
double sum_avx2(const double* x, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0 = _mm256_add_pd(a0, _mm256_loadu_pd(x + i));
    a1 = _mm256_add_pd(a1, _mm256_loadu_pd(x + i + 4));
  }
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) s += x[i];
  return s;
}

double clamp_sum_avx2(const double* x, std::size_t n, double lo, double hi) {
  const __m256d vlo = _mm256_set1_pd(lo), vhi = _mm256_set1_pd(hi);
  __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0 = _mm256_add_pd(a0, _mm256_min_pd(_mm256_max_pd(_mm256_loadu_pd(x + i), vlo), vhi));
    a1 = _mm256_add_pd(a1, _mm256_min_pd(_mm256_max_pd(_mm256_loadu_pd(x + i + 4), vlo), vhi));
  }
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) s += std::min(std::max(x[i], lo), hi);
  return s;
}

void clamp_copy_avx2(const double* x, std::size_t n, double lo, double hi, double* out) {
  const __m256d vlo = _mm256_set1_pd(lo), vhi = _mm256_set1_pd(hi);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_min_pd(_mm256_max_pd(_mm256_loadu_pd(x + i), vlo), vhi));
  }
  for (; i < n; ++i) out[i] = std::min(std::max(x[i], lo), hi);
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), a0);
    a1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), a1);
  }
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum_sq_dev_avx2(const double* x, std::size_t n, double center) {
  const __m256d c = _mm256_set1_pd(center);
  __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d r0 = _mm256_sub_pd(_mm256_loadu_pd(x + i), c);
    const __m256d r1 = _mm256_sub_pd(_mm256_loadu_pd(x + i + 4), c);
    a0 = _mm256_fmadd_pd(r0, r0, a0);
    a1 = _mm256_fmadd_pd(r1, r1, a1);
  }
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) {
    const double r = x[i] - center;
    s += r * r;
  }
  return s;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

double max_abs_shifted_avx2(const double* y, const double* shift, std::size_t n) {
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  if (shift) {
    for (; i + 4 <= n; i += 4) {
      m = _mm256_max_pd(m, abs_pd(_mm256_add_pd(_mm256_loadu_pd(y + i), _mm256_loadu_pd(shift + i))));
    }
  } else {
    for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, abs_pd(_mm256_loadu_pd(y + i)));
  }
  double r = hmax(m);
  for (; i < n; ++i) r = std::max(r, std::abs(y[i] + (shift ? shift[i] : 0.0)));
  return r;
}

}  // namespace

const KernelTable avx2_table{
    Level::Avx2,    sum_avx2, clamp_sum_avx2, clamp_copy_avx2, dot_avx2, sum_sq_dev_avx2,
    axpy_avx2,      max_abs_shifted_avx2,
};

}  // namespace rmt::simd::detail
