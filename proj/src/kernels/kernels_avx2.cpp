// Compiled with -mavx2 -mfma; only reached after the runtime CPU check.
#include <immintrin.h>

#include "covshift/kernels.hpp"

namespace covshift::kernels::avx2 {

namespace {

inline double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

std::size_t count_at_least(std::span<const double> xs, double threshold) {
  const double* p = xs.data();
  const std::size_t n = xs.size();
  const __m256d th = _mm256_set1_pd(threshold);
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    const int m0 = _mm256_movemask_pd(_mm256_cmp_pd(_mm256_loadu_pd(p + i), th, _CMP_GE_OQ));
    const int m1 = _mm256_movemask_pd(_mm256_cmp_pd(_mm256_loadu_pd(p + i + 4), th, _CMP_GE_OQ));
    const int m2 = _mm256_movemask_pd(_mm256_cmp_pd(_mm256_loadu_pd(p + i + 8), th, _CMP_GE_OQ));
    const int m3 = _mm256_movemask_pd(_mm256_cmp_pd(_mm256_loadu_pd(p + i + 12), th, _CMP_GE_OQ));
    count += static_cast<std::size_t>(
        __builtin_popcount(static_cast<unsigned>(m0 | (m1 << 4) | (m2 << 8) | (m3 << 12))));
  }
  for (; i + 4 <= n; i += 4) {
    const int m = _mm256_movemask_pd(_mm256_cmp_pd(_mm256_loadu_pd(p + i), th, _CMP_GE_OQ));
    count += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(m)));
  }
  for (; i < n; ++i) count += p[i] >= threshold ? 1 : 0;
  return count;
}

double dot(std::span<const double> a, std::span<const double> b) {
  const double* pa = a.data();
  const double* pb = b.data();
  const std::size_t n = a.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i + 4), _mm256_loadu_pd(pb + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i), acc0);
  }
  double s = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += pa[i] * pb[i];
  return s;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  const double* pa = a.data();
  const double* pb = b.data();
  const std::size_t n = a.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i));
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(pa + i + 4), _mm256_loadu_pd(pb + i + 4));
    acc0 = _mm256_fmadd_pd(d0, d0, acc0);
    acc1 = _mm256_fmadd_pd(d1, d1, acc1);
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i));
    acc0 = _mm256_fmadd_pd(d, d, acc0);
  }
  double s = horizontal_sum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    const double d = pa[i] - pb[i];
    s += d * d;
  }
  return s;
}

}  // namespace covshift::kernels::avx2
