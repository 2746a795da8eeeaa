#include <doctest.h>

#include <cmath>

#include "mtirl/birl.hpp"
#include "mtirl/scenarios.hpp"
#include "mtirl/scot.hpp"
#include "oracles.hpp"

using namespace mtirl;

namespace {

Demonstration pair_demo(int s, int a) {
  Demonstration d;
  d.start_state = s;
  d.steps = {{s, a}};
  return d;
}

}  // namespace

TEST_CASE("likelihood at alpha 0 is uniform") {
  const Mdp mdp = oracle::random_mdp(4, 3, 2, 1);
  const std::vector<Demonstration> demos = {pair_demo(0, 1), pair_demo(2, 0)};
  CHECK(log_likelihood(demos, mdp.weights(), 0.0, mdp) == doctest::Approx(2.0 * std::log(1.0 / 3.0)));
}

TEST_CASE("likelihood matches a hand softmax on a two-state chain") {
  // s0: stay (0) or move (1) to terminal s1. phi(s0) = e0, phi(s1) = e1.
  const Mdp mdp(2, 2, {{{0, 1.0}}, {{1, 1.0}}, {{1, 1.0}}, {{1, 1.0}}}, 2, {1, 0, 0, 1}, {-0.2, 0.5},
                0.9, {0}, {1});
  // Q(s0, move) = -0.2 + 0.9 * 0.5; staying forever would be -0.2/(1-0.9) but
  // the better option is to move, so V(s0) = Q(s0, move) and
  // Q(s0, stay) = -0.2 + 0.9 * V(s0).
  const double q_move = -0.2 + 0.9 * 0.5;
  const double q_stay = -0.2 + 0.9 * q_move;
  const double expected = q_move - std::log(std::exp(q_move) + std::exp(q_stay));
  const std::vector<Demonstration> demos = {pair_demo(0, 1)};
  CHECK(log_likelihood(demos, mdp.weights(), 1.0, mdp) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("likelihood properties") {
  const Mdp mdp = oracle::random_mdp(5, 3, 3, 2);
  const Policy pi = solve_optimal(mdp).policy;
  const std::vector<Demonstration> a = {pair_demo(0, pi.first_action(0))};
  const std::vector<Demonstration> b = {pair_demo(3, pi.first_action(3))};
  const std::vector<Demonstration> ab = {a[0], b[0]};
  const std::vector<double> w = {0.3, -0.1, 0.7};
  const double la = log_likelihood(a, w, 5.0, mdp);
  const double lb = log_likelihood(b, w, 5.0, mdp);
  CHECK(log_likelihood(ab, w, 5.0, mdp) == doctest::Approx(la + lb).epsilon(1e-12));
  // Doubling w and halving alpha.
  const std::vector<double> w2 = {0.6, -0.2, 1.4};
  CHECK(log_likelihood(ab, w2, 2.5, mdp) == doctest::Approx(la + lb).epsilon(1e-9));
  // A uniquely optimal action's likelihood tends to 0 as alpha grows.
  CHECK(log_likelihood(a, mdp.weights(), 1e6, mdp) > -1e-6);
  CHECK(log_likelihood(a, mdp.weights(), 1e3, mdp) <= 0.0);
}

TEST_CASE("mcmc on the example grid recovers the teacher's policy") {
  const std::vector<double> w = {-1.0, -2.639};
  const Mdp mdp = example_grid(w);
  ScotParams sp;
  sp.horizon = 10;
  Rng rng(1);
  const ScotResult taught = scot(mdp, w, sp, rng);
  McmcConfig c;
  c.seed = 9;
  const McmcResult fit = mcmc_map(mdp, taught.selection.demos, c);
  CHECK_FALSE(fit.from_prior);
  CHECK(contains(taught.universe, fit.map_weights));
  const OptimalSolution teacher = solve_optimal(mdp);
  const auto ev = evaluate_reward(mdp, w, teacher.policy, successor_features(mdp, teacher.policy), fit.map_weights);
  CHECK(ev.pct_incorrect == 0.0);
  CHECK(ev.policy_loss < 1e-8);
  // Same seed, same chain.
  const McmcResult again = mcmc_map(mdp, taught.selection.demos, c);
  CHECK(again.map_weights == fit.map_weights);
  CHECK(again.acceptance_rate == fit.acceptance_rate);
}

TEST_CASE("mcmc edge cases") {
  const Mdp mdp = oracle::random_mdp(4, 2, 3, 3);
  McmcConfig c;
  c.chain_length = 200;
  const McmcResult prior = mcmc_map(mdp, {}, c);
  CHECK(prior.from_prior);
  CHECK(prior.map_weights.size() == 3);
  for (double x : prior.map_weights) CHECK(std::fabs(x) <= 1.0);

  const std::vector<Demonstration> demos = {pair_demo(0, 0)};
  c.posterior_samples = 10;
  const McmcResult fit = mcmc_map(mdp, demos, c);
  CHECK(fit.posterior.size() == 10);
  for (const auto& s : fit.posterior) {
    for (double x : s.weights) CHECK(std::fabs(x) <= 1.0);
    CHECK(s.policy == solve_optimal(mdp, s.weights).policy);
  }
  // With a flat likelihood every proposal is accepted.
  c.alpha = 0.0;
  c.posterior_samples = 0;
  CHECK(mcmc_map(mdp, demos, c).acceptance_rate == 1.0);

  c.chain_length = 0;
  CHECK_THROWS(mcmc_map(mdp, demos, c));
  c.chain_length = 10;
  c.step_size = 0.0;
  CHECK_THROWS(mcmc_map(mdp, demos, c));
}
