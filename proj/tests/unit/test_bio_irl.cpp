#include <doctest.h>

#include <cmath>
#include <thread>

#include "mtirl/bio_irl.hpp"
#include "mtirl/error.hpp"
#include "mtirl/scenarios.hpp"
#include "oracles.hpp"

using namespace mtirl;

TEST_CASE("angular similarity") {
  const std::vector<double> x = {1.0, 0.0}, y = {0.0, 1.0}, nx = {-1.0, 0.0};
  CHECK(angular_similarity(x, x) == 1.0);
  CHECK(angular_similarity(x, nx) == 0.0);
  CHECK(angular_similarity(x, y) == doctest::Approx(0.5));
  const std::vector<double> big = {2.0, 0.0};
  CHECK_THROWS_AS(angular_similarity(x, big), Error);
}

TEST_CASE("greedy angular matching") {
  HalfSpaceSet target(2), demo(2), empty(2);
  target.add(std::vector<double>{1.0, 0.0});
  target.add(std::vector<double>{0.0, 1.0});
  CHECK(ang_sim_match(target, target) == doctest::Approx(1.0));
  CHECK(ang_sim_match(empty, target) == 0.0);
  demo.add(std::vector<double>{1.0, 0.0});
  CHECK(ang_sim_match(demo, target) == doctest::Approx(0.5));
  CHECK_THROWS_AS(ang_sim_match(demo, empty), Error);

  // Adding demo normals never lowers the score while targets remain.
  Rng rng(3);
  HalfSpaceSet t3(3), d3(3);
  for (int i = 0; i < 6; ++i) {
    std::vector<double> n(3);
    for (double& v : n) v = uniform(rng, -1, 1);
    t3.add(n);
  }
  double last = 0.0;
  for (int i = 0; i < 6; ++i) {
    std::vector<double> n(3);
    for (double& v : n) v = uniform(rng, -1, 1);
    d3.add(n);
    const double s = ang_sim_match(d3, t3);
    CHECK(s >= last);
    CHECK(s <= 1.0 + 1e-12);
    last = s;
  }
}

TEST_CASE("info gap on the example grid") {
  const std::vector<double> w = {-1.0, -2.639};
  const Mdp mdp = example_grid(w);
  InfoGapParams params;
  params.scot.horizon = 10;
  InfoGapModel model(mdp, params);
  const Policy pi = solve_optimal(mdp).policy;
  const auto entry = model.entry_for(pi);
  REQUIRE(entry->teaching.size() == 1);
  // The teaching trajectory itself has no gap.
  CHECK(model.info_gap(entry->teaching, w) == doctest::Approx(0.0).epsilon(1e-12));
  // The bottom-right start is less informative.
  Demonstration d;
  d.start_state = 5;
  d.steps = {{5, kLeft}, {4, kLeft}, {3, kUp}};
  CHECK(model.info_gap(std::vector{d}, w) > 0.0);
  CHECK(info_gap(std::vector{d}, w, mdp, params) == model.info_gap(std::vector{d}, w));

  // Degenerate reward: identical features, every action optimal, empty BEC.
  const Mdp flat = make_grid(3, 2, 2, {1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0}, {0.3, -0.7}, 0.9,
                             {0, 1, 2, 3, 4, 5}, {});
  InfoGapModel flat_model(flat, params);
  CHECK(flat_model.info_gap(std::vector{d}, flat.weights()) == 0.0);
}

TEST_CASE("chain scenario ordering") {
  const ChainScenario chain = scenario_chain();
  REQUIRE(chain.candidate_rewards.size() == 3);
  InfoGapParams params;
  params.scot.horizon = chain.mdp.num_states();
  InfoGapModel model(chain.mdp, params);
  std::vector<Policy> policies;
  for (const auto& w : chain.candidate_rewards) {
    const Policy p = solve_optimal(chain.mdp, w).policy;
    // The demonstration is strictly optimal under every candidate.
    for (const auto& [s, a] : chain.demos[0].steps) CHECK(p.support(s) == std::vector<int>{a});
    policies.push_back(p);
  }
  CHECK_FALSE(policies[0] == policies[1]);
  CHECK_FALSE(policies[1] == policies[2]);
  CHECK_FALSE(policies[0] == policies[2]);
  const double ga = model.info_gap(chain.demos, chain.candidate_rewards[0]);
  CHECK(ga < model.info_gap(chain.demos, chain.candidate_rewards[1]));
  CHECK(ga < model.info_gap(chain.demos, chain.candidate_rewards[2]));
}

TEST_CASE("bio likelihood") {
  const ChainScenario chain = scenario_chain();
  InfoGapParams params;
  params.scot.horizon = chain.mdp.num_states();
  for (const auto& w : chain.candidate_rewards) {
    CHECK(bio_log_likelihood(chain.demos, w, 100.0, 0.0, chain.mdp, params) ==
          log_likelihood(chain.demos, w, 100.0, chain.mdp));
  }
  CHECK_THROWS_AS(bio_log_likelihood(chain.demos, chain.candidate_rewards[0], 1.0, -1.0, chain.mdp, params), Error);
  // Large lambda: B's relative likelihood vanishes.
  const double la = bio_log_likelihood(chain.demos, chain.candidate_rewards[0], 100.0, 1000.0, chain.mdp, params);
  const double lb = bio_log_likelihood(chain.demos, chain.candidate_rewards[1], 100.0, 1000.0, chain.mdp, params);
  CHECK(std::exp(lb - la) < 1e-100);
}

TEST_CASE("cached BEC reuse is sound") {
  const Mdp mdp = scenario_ballsort(4);
  InfoGapParams params;
  params.scot.horizon = 10;
  InfoGapModel cached(mdp, params);
  const Policy teacher = solve_optimal(mdp).policy;
  const auto demos = cached.entry_for(teacher)->teaching;
  Rng rng(8);
  int hits = 0;
  for (int i = 0; i < 200; ++i) {
    std::vector<double> w(5);
    for (double& x : w) x = uniform(rng, -1, 1);
    const double fresh = bio_log_likelihood(demos, w, 100.0, 10.0, mdp, params);
    if (const auto entry = cached.find_containing(w)) {
      // Inside a cached cone the optimal policy, and hence the gap, is the cached one.
      ++hits;
      const double via_cache = log_likelihood(demos, w, 100.0, mdp) - 10.0 * cached.info_gap(demos, entry->policy);
      CHECK(via_cache == doctest::Approx(fresh).epsilon(1e-12));
    }
    CHECK(bio_log_likelihood(demos, w, 100.0, 10.0, cached) == doctest::Approx(fresh).epsilon(1e-12));
  }
  CHECK(hits > 0);
  CHECK(cached.cache_size() == cached.misses());
}

TEST_CASE("model is shareable across threads") {
  const Mdp mdp = scenario_ballsort(5);
  InfoGapParams params;
  params.scot.horizon = 10;
  InfoGapModel shared(mdp, params);
  const auto demos = shared.entry_for(solve_optimal(mdp).policy)->teaching;
  std::vector<std::vector<double>> ws(64, std::vector<double>(5));
  Rng rng(2);
  for (auto& w : ws) {
    for (double& x : w) x = uniform(rng, -1, 1);
  }
  std::vector<double> par(ws.size()), seq(ws.size());
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&, t] {
      for (std::size_t i = t; i < ws.size(); i += 4) par[i] = shared.info_gap(demos, ws[i]);
    });
  }
  for (auto& th : threads) th.join();
  for (std::size_t i = 0; i < ws.size(); ++i) seq[i] = info_gap(demos, ws[i], mdp, params);
  CHECK(par == seq);
}
