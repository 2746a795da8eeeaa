#pragma once

// Data-parallel inner loops with a scalar reference and SIMD variants picked
// at runtime. Every variant evaluates the same operations in the same order
// per element (no fused multiply-add), so results are bit-identical across
// ISAs and the equivalence tests compare with ==.

#include <cstddef>
#include <span>

namespace mtirl::kernels {

enum class Isa { scalar, avx2, neon };

const char* isa_name(Isa isa);

/// True when the variant was compiled in and the running CPU supports it.
bool isa_supported(Isa isa);

/// Best supported ISA, unless overridden with MTIRL_FORCE_ISA=scalar|avx2|neon.
Isa detect_isa();

struct KernelTable {
  // y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // max_i |a[i] - b[i]|; 0 for n == 0
  double (*max_abs_diff)(const double* a, const double* b, std::size_t n);
  // Number of samples x with dot(n, x) >= 0 for every normal n. Normals are
  // row-major (num_normals x dim); samples are column-major by dimension:
  // samples[d * count + j] is coordinate d of sample j. Dot products
  // accumulate d = 0..dim-1 starting from +0.0.
  std::size_t (*count_in_cone)(const double* normals, std::size_t num_normals,
                               std::size_t dim, const double* samples,
                               std::size_t count);
};

/// Kernel table for a specific ISA; throws Error(invalid_input) if unsupported.
const KernelTable& table(Isa isa);

/// Table for the ISA selected at first use.
const KernelTable& active();
Isa active_isa();

inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  active().axpy(a, x.data(), y.data(), y.size());
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  return active().max_abs_diff(a.data(), b.data(), a.size());
}

inline std::size_t count_in_cone(std::span<const double> normals, std::size_t dim,
                                 std::span<const double> samples, std::size_t count) {
  return active().count_in_cone(normals.data(), dim == 0 ? 0 : normals.size() / dim,
                                dim, samples.data(), count);
}

namespace detail {
const KernelTable& scalar_table();
#if defined(MTIRL_HAVE_AVX2)
const KernelTable& avx2_table();
#endif
#if defined(MTIRL_HAVE_NEON)
const KernelTable& neon_table();
#endif
}  // namespace detail

}  // namespace mtirl::kernels
