#include <cmath>

#include "mtirl/kernels.hpp"

namespace mtirl::kernels::detail {
namespace {

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

double max_abs_diff_scalar(const double* a, const double* b, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::fabs(a[i] - b[i]);
    if (d > m) m = d;
  }
  return m;
}

std::size_t count_in_cone_scalar(const double* normals, std::size_t num_normals,
                                 std::size_t dim, const double* samples,
                                 std::size_t count) {
  std::size_t inside = 0;
  for (std::size_t j = 0; j < count; ++j) {
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

const KernelTable& scalar_table() {
  static const KernelTable t{axpy_scalar, max_abs_diff_scalar, count_in_cone_scalar};
  return t;
}

}  // namespace mtirl::kernels::detail
