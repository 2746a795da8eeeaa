#include <doctest.h>

#include <cmath>

#include "mtirl/active.hpp"
#include "mtirl/error.hpp"
#include "mtirl/scenarios.hpp"

using namespace mtirl;

namespace {

PosteriorSample sample_with(const Policy& p) { return {{}, p}; }

}  // namespace

TEST_CASE("strategy names round trip") {
  for (StrategyKind k : {StrategyKind::random, StrategyKind::max_entropy, StrategyKind::scot_oracle}) {
    CHECK(parse_strategy(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_strategy("greedy"), Error);
}

TEST_CASE("queryable states skip terminals") {
  const std::vector<double> w = {-1.0, -2.639};
  const Mdp mdp = example_grid(w);
  const std::vector<int> q = queryable_states(mdp);
  CHECK(q == std::vector<int>{1, 2, 3, 4, 5});
}

TEST_CASE("action entropy") {
  // Two states, two actions. Samples disagree on state 0 and agree on state 1.
  const Policy left = Policy::deterministic(2, std::vector<int>{0, 0});
  const Policy right = Policy::deterministic(2, std::vector<int>{1, 0});
  const Policy tied(2, 2, {0.5, 0.5, 1.0, 0.0});
  const std::vector<PosteriorSample> split = {sample_with(left), sample_with(right)};
  CHECK(action_entropy(split, 0) == doctest::Approx(std::log(2.0)));
  CHECK(action_entropy(split, 1) == 0.0);
  const std::vector<PosteriorSample> one_tied = {sample_with(tied)};
  CHECK(action_entropy(one_tied, 0) == doctest::Approx(std::log(2.0)));
  CHECK(action_entropy({}, 0) == 0.0);
}

TEST_CASE("max entropy picks the most uncertain open state") {
  const std::vector<double> w = {-1.0, -2.639};
  const Mdp mdp = example_grid(w);
  // Samples disagree only at state 4.
  std::vector<int> a = {0, 0, 0, 0, 0, 0}, b = a;
  b[4] = 3;
  const std::vector<PosteriorSample> samples = {
      sample_with(Policy::deterministic(4, a)), sample_with(Policy::deterministic(4, b))};
  QueryHistory history;
  Rng rng(1);
  const QueryStrategy me{StrategyKind::max_entropy, 2};
  CHECK(next_query(me, samples, mdp, history, rng) == 4);
  history.queried.push_back(4);
  // All remaining states tie at zero entropy: lowest index wins.
  CHECK(next_query(me, samples, mdp, history, rng) == 1);
  CHECK_THROWS_AS(next_query(me, {}, mdp, history, rng), Error);
}

TEST_CASE("random queries never repeat and then exhaust") {
  const std::vector<double> w = {-1.0, -2.639};
  const Mdp mdp = example_grid(w);
  QueryHistory history;
  Rng rng(9);
  const QueryStrategy rs{StrategyKind::random, 0};
  for (int i = 0; i < 5; ++i) {
    const int s = next_query(rs, {}, mdp, history, rng);
    CHECK_FALSE(history.was_queried(s));
    CHECK_FALSE(mdp.is_terminal(s));
    history.queried.push_back(s);
  }
  try {
    next_query(rs, {}, mdp, history, rng);
    FAIL("expected exhausted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::exhausted);
  }
}

TEST_CASE("scot oracle follows the teaching sequence and skips asked starts") {
  const std::vector<double> w = {-1.0, -2.639};
  const Mdp mdp = example_grid(w);
  QueryHistory history;
  history.scot_sequence.resize(3);
  history.scot_sequence[0].start_state = 2;
  history.scot_sequence[1].start_state = 5;
  history.scot_sequence[2].start_state = 3;
  history.queried.push_back(5);
  Rng rng(2);
  const QueryStrategy so{StrategyKind::scot_oracle, 0};
  CHECK(next_query(so, {}, mdp, history, rng) == 2);
  history.queried.push_back(2);
  history.scot_next = 1;
  CHECK(next_query(so, {}, mdp, history, rng) == 3);
  CHECK(history.scot_next == 2);
}

TEST_CASE("mean curve carries final values forward") {
  LossCurve a, b;
  a.policy_loss = {2.0, 0.0};
  a.pct_incorrect = {20.0, 0.0};
  b.policy_loss = {4.0};
  b.pct_incorrect = {40.0};
  const std::vector<LossCurve> curves = {a, b};
  const LossCurve m = mean_curve(curves);
  CHECK(m.replicates == 2);
  CHECK(m.policy_loss == std::vector<double>{3.0, 2.0});
  CHECK(m.pct_incorrect == std::vector<double>{30.0, 20.0});
}

TEST_CASE("active loop on the example grid") {
  const std::vector<double> w = {-1.0, -2.639};
  const Mdp mdp = example_grid(w);
  ActiveParams params;
  params.n_queries = 5;
  params.trajectory_length = 10;
  params.birl.chain_length = 1500;
  params.birl.step_size = 0.05;
  params.birl.seed = 17;

  for (StrategyKind k : {StrategyKind::random, StrategyKind::max_entropy, StrategyKind::scot_oracle}) {
    CAPTURE(to_string(k));
    Rng r1(5), r2(5);
    const QueryStrategy strategy{k, 20};
    const LossCurve c1 = run_active(mdp, strategy, params, r1);
    const LossCurve c2 = run_active(mdp, strategy, params, r2);
    REQUIRE(c1.policy_loss.size() == 5);
    CHECK(c1.policy_loss == c2.policy_loss);
    CHECK(c1.pct_incorrect == c2.pct_incorrect);
    for (double x : c1.policy_loss) CHECK(x >= -1e-9);
    if (k == StrategyKind::scot_oracle) {
      // One trajectory from the far corner teaches the whole cone.
      CHECK(c1.scot_exhausted_at == 1);
      CHECK(c1.pct_incorrect.back() == 0.0);
    }
  }

  Rng rng(1);
  params.n_queries = 0;
  CHECK_THROWS_AS(run_active(mdp, QueryStrategy{}, params, rng), Error);
}
