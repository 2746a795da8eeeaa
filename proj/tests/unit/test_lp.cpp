#include <doctest.h>

#include "mtirl/lp.hpp"
#include "oracles.hpp"

using namespace mtirl;

TEST_CASE("box only") {
  const std::vector<double> c = {1.0, -2.0};
  const auto r = lp::maximize_in_box_cone(c, {}, 2);
  CHECK(r.status == lp::Status::optimal);
  CHECK(r.objective == doctest::Approx(3.0));
  CHECK(r.point[0] == doctest::Approx(1.0));
  CHECK(r.point[1] == doctest::Approx(-1.0));
}

TEST_CASE("cone constraint binds") {
  // max w0 subject to -w0 + w1 >= 0 and the box: optimum w0 = w1 = 1.
  const std::vector<double> c = {1.0, 0.0};
  const std::vector<double> n = {-1.0, 1.0};
  const auto r = lp::maximize_in_box_cone(c, n, 2);
  CHECK(r.objective == doctest::Approx(1.0));
  // -w0 >= 0 forces the optimum of max w0 to 0.
  const std::vector<double> n2 = {-1.0, 0.0};
  CHECK(lp::maximize_in_box_cone(c, n2, 2).objective == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("matches vertex enumeration on random instances") {
  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t dim = 2 + uniform_index(rng, 3);
    const std::size_t m = uniform_index(rng, 7);
    std::vector<double> normals(m * dim), c(dim);
    for (double& x : normals) x = uniform(rng, -1.0, 1.0);
    for (double& x : c) x = uniform(rng, -1.0, 1.0);
    // Degenerate repeats and opposing pairs.
    if (m >= 2 && trial % 5 == 0) {
      for (std::size_t j = 0; j < dim; ++j) normals[dim + j] = -normals[j];
    }
    const auto r = lp::maximize_in_box_cone(c, normals, dim);
    REQUIRE(r.status == lp::Status::optimal);
    CHECK(r.objective == doctest::Approx(oracle::lp_vertex_max(c, normals, dim)).epsilon(1e-9));
    // Returned point is feasible and attains the objective.
    double v = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      CHECK(std::fabs(r.point[j]) <= 1.0 + 1e-9);
      v += c[j] * r.point[j];
    }
    CHECK(v == doctest::Approx(r.objective));
    for (std::size_t i = 0; i < m; ++i) {
      double d = 0.0;
      for (std::size_t j = 0; j < dim; ++j) d += normals[i * dim + j] * r.point[j];
      CHECK(d >= -1e-9);
    }
  }
}
