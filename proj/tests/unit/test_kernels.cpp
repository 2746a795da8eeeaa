#include <doctest.h>

#include <cstdlib>
#include <vector>

#include "mtirl/error.hpp"
#include "mtirl/kernels.hpp"
#include "mtirl/random.hpp"

using namespace mtirl;
using kernels::Isa;

namespace {

std::vector<Isa> simd_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::avx2, Isa::neon}) {
    if (kernels::isa_supported(isa)) out.push_back(isa);
  }
  return out;
}

std::vector<double> random_vec(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = uniform(rng, -1.0, 1.0);
  return v;
}

}  // namespace

TEST_CASE("scalar kernels on hand values") {
  const auto& t = kernels::table(Isa::scalar);
  std::vector<double> x = {1, 2, 3}, y = {1, 1, 1};
  t.axpy(2.0, x.data(), y.data(), 3);
  CHECK(y == std::vector<double>{3, 5, 7});
  CHECK(t.max_abs_diff(x.data(), y.data(), 3) == 4.0);
  CHECK(t.max_abs_diff(x.data(), y.data(), 0) == 0.0);

  // Normals e0 and e1 in 2-D; samples (1,1), (-1,1), (1,-1), (0,0).
  const std::vector<double> normals = {1, 0, 0, 1};
  const std::vector<double> samples = {1, -1, 1, 0, 1, 1, -1, 0};
  CHECK(t.count_in_cone(normals.data(), 2, 2, samples.data(), 4) == 2);
  CHECK(t.count_in_cone(normals.data(), 0, 2, samples.data(), 4) == 4);
}

TEST_CASE("SIMD kernels are bit-identical to scalar") {
  const auto& ref = kernels::table(Isa::scalar);
  Rng rng(17);
  for (Isa isa : simd_isas()) {
    CAPTURE(kernels::isa_name(isa));
    const auto& t = kernels::table(isa);
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 31u, 64u, 1001u}) {
      const auto x = random_vec(rng, n);
      auto y1 = random_vec(rng, n);
      auto y2 = y1;
      const double a = uniform(rng, -2.0, 2.0);
      ref.axpy(a, x.data(), y1.data(), n);
      t.axpy(a, x.data(), y2.data(), n);
      CHECK(y1 == y2);
      CHECK(ref.max_abs_diff(x.data(), y1.data(), n) == t.max_abs_diff(x.data(), y1.data(), n));
    }
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t dim = 1 + uniform_index(rng, 10);
      const std::size_t m = uniform_index(rng, 12);
      const std::size_t count = uniform_index(rng, 2000);
      const auto normals = random_vec(rng, m * dim);
      const auto samples = random_vec(rng, count * dim);
      CHECK(ref.count_in_cone(normals.data(), m, dim, samples.data(), count) ==
            t.count_in_cone(normals.data(), m, dim, samples.data(), count));
    }
    // Opposing normals: only samples exactly on the hyperplane survive.
    std::vector<double> samples = {0, 0.5, -0.5, 0, 1, 2, 3, 4};
    const std::vector<double> pair = {1, 0, -1, 0};
    CHECK(t.count_in_cone(pair.data(), 2, 2, samples.data(), 4) ==
          ref.count_in_cone(pair.data(), 2, 2, samples.data(), 4));
    CHECK(ref.count_in_cone(pair.data(), 2, 2, samples.data(), 4) == 2);
  }
}

TEST_CASE("dispatch") {
  CHECK(kernels::isa_supported(Isa::scalar));
  CHECK(kernels::isa_supported(kernels::active_isa()));
  if (!kernels::isa_supported(Isa::neon)) {
    CHECK_THROWS_AS(kernels::table(Isa::neon), Error);
  }
  setenv("MTIRL_FORCE_ISA", "scalar", 1);
  CHECK(kernels::detect_isa() == Isa::scalar);
  unsetenv("MTIRL_FORCE_ISA");
}
