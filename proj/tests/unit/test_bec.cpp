#include <doctest.h>

#include <cmath>

#include "mtirl/bec.hpp"
#include "mtirl/error.hpp"
#include "mtirl/scenarios.hpp"
#include "oracles.hpp"

using namespace mtirl;

namespace {

bool has_normal(const HalfSpaceSet& hs, std::vector<double> raw) {
  double n = 0.0;
  for (double x : raw) n += x * x;
  for (double& x : raw) x /= std::sqrt(n);
  return hs.find(raw) < hs.size();
}

double dot(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] * b[i];
  return d;
}

const std::vector<double> kExampleW = {-1.0, -2.639};

}  // namespace

TEST_CASE("half-space set normalizes and deduplicates") {
  HalfSpaceSet hs(2);
  CHECK(hs.add(std::vector<double>{3.0, 4.0}));
  CHECK_FALSE(hs.add(std::vector<double>{6.0, 8.0}));
  CHECK_FALSE(hs.add(std::vector<double>{1e-12, 0.0}));
  CHECK(hs.add(std::vector<double>{-3.0, -4.0}));  // opposing normals are kept
  CHECK(hs.size() == 2);
  CHECK(hs.normal(0)[0] == doctest::Approx(0.6));
  // Normalizing an already-unit normal changes nothing.
  HalfSpaceSet again(2);
  again.add(hs.normal(0));
  CHECK(again.normal(0)[0] == hs.normal(0)[0]);
  CHECK(again.normal(0)[1] == hs.normal(0)[1]);
  CHECK_THROWS_AS(hs.add(std::vector<double>{1.0}), Error);
}

TEST_CASE("example grid BEC") {
  const Mdp mdp = example_grid(kExampleW);
  const Policy pi = solve_optimal(mdp).policy;
  const SuccessorFeatures sf = successor_features(mdp, pi);
  const HalfSpaceSet pruned = remove_redundant(bec_of_policy(mdp, pi, sf));
  REQUIRE(pruned.size() == 2);
  CHECK(has_normal(pruned, {-1.0, 0.0}));
  CHECK(has_normal(pruned, {1.0 + 0.81 + 0.729, -1.0}));

  const std::vector<double> in = {-1.0, -3.0}, out = {-1.0, -2.0}, zero = {0.0, 0.0};
  CHECK(contains(pruned, in));
  CHECK_FALSE(contains(pruned, out));
  CHECK(contains(pruned, zero));

  // Demonstration from the bottom-right start: 5 -> 4 -> 3 -> 0.
  Demonstration d;
  d.start_state = 5;
  d.steps = {{5, kLeft}, {4, kLeft}, {3, kUp}};
  const HalfSpaceSet demo = remove_redundant(bec_of_demos(mdp, pi, sf, std::vector{d}));
  CHECK(demo.size() == 2);
  CHECK(has_normal(demo, {-1.0, 0.0}));
  CHECK(has_normal(demo, {1.0, -1.0}));
  // The demonstration cone contains the policy cone.
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const std::vector<double> w = {uniform(rng, -1, 1), uniform(rng, -1, 1)};
    if (contains(pruned, w)) CHECK(contains(demo, w));
  }

  CHECK(bec_of_demos(mdp, pi, sf, {}).empty());
  Demonstration wrong;
  wrong.steps = {{2, kLeft}};
  CHECK_THROWS_AS(bec_of_demos(mdp, pi, sf, std::vector{wrong}), Error);
  CHECK(bec_of_demos(mdp, pi, sf, std::vector{wrong}, false).size() > 0);
}

TEST_CASE("all actions optimal gives an empty cone") {
  // Identical features everywhere and no terminals: every action has the
  // same feature expectations.
  const Mdp mdp = make_grid(3, 2, 2, {1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0}, {0.3, -0.7}, 0.9,
                            {0, 1, 2, 3, 4, 5}, {});
  const Policy pi = solve_optimal(mdp).policy;
  for (int s = 0; s < 6; ++s) CHECK(pi.support(s).size() == 4);
  CHECK(bec_of_policy(mdp, pi, successor_features(mdp, pi)).empty());
}

TEST_CASE("redundancy removal on hand cases") {
  const double r = 1.0 / std::sqrt(2.0);
  HalfSpaceSet hs(2);
  hs.add(std::vector<double>{-1.0, 0.0});
  hs.add(std::vector<double>{0.0, -1.0});
  hs.add(std::vector<double>{-r, -r});
  const HalfSpaceSet pruned = remove_redundant(hs);
  CHECK(pruned.size() == 2);
  CHECK(has_normal(pruned, {-1.0, 0.0}));
  CHECK(has_normal(pruned, {0.0, -1.0}));

  HalfSpaceSet one(2);
  one.add(std::vector<double>{-1.0, 0.0});
  CHECK(remove_redundant(one).size() == 1);

  // An equality pair stays as two normals.
  HalfSpaceSet eq(2);
  eq.add(std::vector<double>{1.0, -1.0});
  eq.add(std::vector<double>{-1.0, 1.0});
  CHECK(remove_redundant(eq).size() == 2);
}

TEST_CASE("cone membership matches re-solving on random MDPs") {
  for (int seed = 0; seed < 10; ++seed) {
    const Mdp mdp = oracle::random_mdp(3, 3, 3, 400 + seed);
    const Policy pi = solve_optimal(mdp).policy;
    const SuccessorFeatures sf = successor_features(mdp, pi);
    const HalfSpaceSet hs = bec_of_policy(mdp, pi, sf);
    Rng rng(seed);
    int inside = 0;
    for (int i = 0; i < 200; ++i) {
      std::vector<double> w(3);
      for (double& x : w) x = uniform(rng, -1, 1);
      const Policy q = solve_optimal(mdp, w).policy;
      bool strictly_inside = true, violates = false;
      for (std::size_t j = 0; j < hs.size(); ++j) {
        const double d = dot(hs.normal(j), w);
        strictly_inside = strictly_inside && d > 1e-6;
        violates = violates || d < -1e-6;
      }
      if (strictly_inside) {
        ++inside;
        CHECK(q == pi);
      }
      if (violates) {
        // Some state has a different optimal action set.
        CHECK_FALSE(q == pi);
      }
    }
    (void)inside;
  }
}

TEST_CASE("full demonstration set reproduces the policy cone") {
  for (int seed = 0; seed < 10; ++seed) {
    const Mdp mdp = oracle::random_mdp(4, 3, 3, 500 + seed, seed % 2);
    const Policy pi = solve_optimal(mdp).policy;
    const SuccessorFeatures sf = successor_features(mdp, pi);
    const auto demos = oracle::all_optimal_pairs(mdp, pi);
    const HalfSpaceSet a = remove_redundant(bec_of_policy(mdp, pi, sf));
    const HalfSpaceSet b = remove_redundant(bec_of_demos(mdp, pi, sf, demos));
    Rng rng(seed);
    std::vector<double> samples(200 * 3);
    for (double& x : samples) x = uniform(rng, -1, 1);
    CHECK(same_membership(a, b, samples));
    CHECK(a.size() == b.size());
  }
}

TEST_CASE("pruning keeps membership on random cones") {
  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = 2 + uniform_index(rng, 4);
    HalfSpaceSet hs(dim);
    // Normals around a common direction so the cone is non-trivial.
    std::vector<double> axis(dim);
    for (double& x : axis) x = uniform(rng, -1, 1);
    const std::size_t m = 3 + uniform_index(rng, 20);
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<double> n(dim);
      for (std::size_t j = 0; j < dim; ++j) n[j] = axis[j] + 0.8 * uniform(rng, -1, 1);
      hs.add(n);
    }
    const HalfSpaceSet pruned = remove_redundant(hs);
    CHECK(pruned.size() <= hs.size());
    for (int i = 0; i < 200; ++i) {
      std::vector<double> w(dim);
      for (double& x : w) x = uniform(rng, -1, 1);
      CHECK(contains(pruned, w) == contains(hs, w));
      // contains agrees with the raw constraints evaluated directly.
      bool direct = true;
      for (std::size_t j = 0; j < hs.size(); ++j) direct = direct && dot(hs.normal(j), w) >= -kContainsTolerance;
      CHECK(contains(hs, w) == direct);
    }
  }
}

TEST_CASE("matrix form agrees with successor-feature normals") {
  // (P_pi - P_b)(I - gamma P_pi)^-1 Phi w >= 0 row by row, for deterministic pi.
  for (int seed = 0; seed < 20; ++seed) {
    const Mdp mdp = oracle::random_mdp(5, 3, 3, 600 + seed, seed % 2);
    const OptimalSolution opt = solve_optimal(mdp);
    std::vector<int> acts(5);
    for (int s = 0; s < 5; ++s) acts[s] = opt.policy.first_action(s);
    const Policy pi = Policy::deterministic(3, acts);
    const SuccessorFeatures sf = successor_features(mdp, pi);
    const Eigen::MatrixXd mu = oracle::exact_successor_features(mdp, pi);
    const Eigen::MatrixXd P = oracle::policy_matrix(mdp, pi);
    Rng rng(seed);
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXd w(3);
      for (int j = 0; j < 3; ++j) w(j) = uniform(rng, -1, 1);
      const Eigen::VectorXd v = mu * w;
      for (int b = 0; b < 3; ++b) {
        const Eigen::VectorXd gap = mdp.discount() * (P - oracle::transition_matrix(mdp, b)) * v;
        for (int s = 0; s < 5; ++s) {
          if (mdp.is_terminal(s)) continue;
          double d = 0.0;
          for (int j = 0; j < 3; ++j) d += (sf.state_action(s, acts[s])[j] - sf.state_action(s, b)[j]) * w(j);
          CHECK(d == doctest::Approx(gap(s)).epsilon(1e-6));
        }
      }
    }
  }
}
