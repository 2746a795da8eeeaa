#include <immintrin.h>

#include <cmath>

#include "mtirl/kernels.hpp"

namespace mtirl::kernels::detail {
namespace {

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_add_pd(vy, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] = y[i] + a * x[i];
}

double max_abs_diff_avx2(const double* a, const double* b, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d vm = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    vm = _mm256_max_pd(vm, _mm256_andnot_pd(sign, d));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, vm);
  double m = 0.0;
  for (double v : lanes) m = v > m ? v : m;
  for (; i < n; ++i) {
    const double d = std::fabs(a[i] - b[i]);
    if (d > m) m = d;
  }
  return m;
}

std::size_t count_in_cone_avx2(const double* normals, std::size_t num_normals,
                               std::size_t dim, const double* samples,
                               std::size_t count) {
  std::size_t inside = 0;
  std::size_t j = 0;
  const __m256d zero = _mm256_setzero_pd();
  for (; j + 4 <= count; j += 4) {
    // alive lanes are all-ones while every constraint so far holds
    __m256d alive = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
    for (std::size_t c = 0; c < num_normals; ++c) {
      const double* n = normals + c * dim;
      __m256d acc = _mm256_setzero_pd();
      for (std::size_t d = 0; d < dim; ++d) {
        acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(n[d]),
                                               _mm256_loadu_pd(samples + d * count + j)));
      }
      alive = _mm256_and_pd(alive, _mm256_cmp_pd(acc, zero, _CMP_GE_OQ));
      if (_mm256_movemask_pd(alive) == 0) break;
    }
    inside += static_cast<std::size_t>(__builtin_popcount(_mm256_movemask_pd(alive)));
  }
  for (; j < count; ++j) {
    bool ok = true;
    for (std::size_t c = 0; c < num_normals && ok; ++c) {
      const double* n = normals + c * dim;
      double acc = 0.0;
      for (std::size_t d = 0; d < dim; ++d) acc = acc + n[d] * samples[d * count + j];
      ok = acc >= 0.0;
    }
    if (ok) ++inside;
  }
  return inside;
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable t{axpy_avx2, max_abs_diff_avx2, count_in_cone_avx2};
  return t;
}

}  // namespace mtirl::kernels::detail
