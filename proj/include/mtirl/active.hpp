#pragma once

// Active IRL query loop. Each query picks a state, the teacher answers with
// an optimal trajectory from it, and BIRL is re-run on everything so far.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mtirl/birl.hpp"
#include "mtirl/mdp.hpp"
#include "mtirl/random.hpp"
#include "mtirl/scot.hpp"

namespace mtirl {

enum class StrategyKind { random, max_entropy, scot_oracle };

std::string_view to_string(StrategyKind kind);
/// Accepts "random", "max-entropy", "scot-oracle".
StrategyKind parse_strategy(std::string_view name);

struct QueryStrategy {
  StrategyKind kind = StrategyKind::random;
  int posterior_samples = 50;  // thinned BIRL states used by max-entropy
};

struct QueryHistory {
  std::vector<int> queried;
  std::vector<Demonstration> demos;
  /// Teaching sequence consumed by scot-oracle, and how much of it is used.
  std::vector<Demonstration> scot_sequence;
  std::size_t scot_next = 0;

  bool was_queried(int s) const;
};

/// States a query may name: non-terminal start states.
std::vector<int> queryable_states(const Mdp& mdp);

/// Entropy (nats) of the action distribution at s, each sample voting
/// uniformly over its optimal-action set.
double action_entropy(std::span<const PosteriorSample> samples, int s);

/// Picks the next state and, for scot-oracle, advances history.scot_next.
/// Throws `exhausted` when every queryable state has been asked.
int next_query(const QueryStrategy& strategy, std::span<const PosteriorSample> samples,
               const Mdp& mdp, QueryHistory& history, Rng& rng);

struct LossCurve {
  std::vector<double> policy_loss;    // mean per query index
  std::vector<double> pct_incorrect;  // mean per query index
  int replicates = 0;
  /// Query index (1-based) after which the whole teaching sequence had been
  /// delivered, or 0. Only meaningful for a single scot-oracle run.
  int scot_exhausted_at = 0;
};

struct ActiveParams {
  int n_queries = 20;
  int trajectory_length = 20;
  McmcConfig birl;
};

/// One run against the teacher reward mdp.weights(). Query q uses chain seed
/// derive_seed(birl.seed, q).
LossCurve run_active(const Mdp& mdp, const QueryStrategy& strategy, const ActiveParams& params,
                     Rng& rng);

/// Element-wise mean; curves may differ in length (shorter ones carry their
/// final value forward).
LossCurve mean_curve(std::span<const LossCurve> curves);

}  // namespace mtirl
