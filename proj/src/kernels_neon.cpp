#include <arm_neon.h>

#include <cmath>

#include "mtirl/kernels.hpp"

namespace mtirl::kernels::detail {
namespace {

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t vy = vld1q_f64(y + i);
    vy = vaddq_f64(vy, vmulq_f64(va, vld1q_f64(x + i)));
    vst1q_f64(y + i, vy);
  }
  for (; i < n; ++i) y[i] = y[i] + a * x[i];
}

double max_abs_diff_neon(const double* a, const double* b, std::size_t n) {
  float64x2_t vm = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vm = vmaxq_f64(vm, vabsq_f64(vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i))));
  }
  double m = vmaxvq_f64(vm);
  for (; i < n; ++i) {
    const double d = std::fabs(a[i] - b[i]);
    if (d > m) m = d;
  }
  return m;
}

std::size_t count_in_cone_neon(const double* normals, std::size_t num_normals,
                               std::size_t dim, const double* samples,
                               std::size_t count) {
  std::size_t inside = 0;
  std::size_t j = 0;
  const float64x2_t zero = vdupq_n_f64(0.0);
  for (; j + 2 <= count; j += 2) {
    uint64x2_t alive = vdupq_n_u64(~0ull);
    for (std::size_t c = 0; c < num_normals; ++c) {
      const double* n = normals + c * dim;
      float64x2_t acc = vdupq_n_f64(0.0);
      for (std::size_t d = 0; d < dim; ++d) {
        acc = vaddq_f64(acc, vmulq_f64(vdupq_n_f64(n[d]), vld1q_f64(samples + d * count + j)));
      }
      alive = vandq_u64(alive, vcgeq_f64(acc, zero));
      if ((vgetq_lane_u64(alive, 0) | vgetq_lane_u64(alive, 1)) == 0) break;
    }
    inside += (vgetq_lane_u64(alive, 0) != 0) + (vgetq_lane_u64(alive, 1) != 0);
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

const KernelTable& neon_table() {
  static const KernelTable t{axpy_neon, max_abs_diff_neon, count_in_cone_neon};
  return t;
}

}  // namespace mtirl::kernels::detail
