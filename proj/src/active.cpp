#include "mtirl/active.hpp"

#include <algorithm>
#include <cmath>

#include "mtirl/error.hpp"

namespace mtirl {

std::string_view to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::random: return "random";
    case StrategyKind::max_entropy: return "max-entropy";
    case StrategyKind::scot_oracle: return "scot-oracle";
  }
  return "unknown";
}

StrategyKind parse_strategy(std::string_view name) {
  if (name == "random") return StrategyKind::random;
  if (name == "max-entropy") return StrategyKind::max_entropy;
  if (name == "scot-oracle") return StrategyKind::scot_oracle;
  throw Error(ErrorCode::invalid_input, "unknown strategy '" + std::string(name) + "'");
}

bool QueryHistory::was_queried(int s) const {
  return std::find(queried.begin(), queried.end(), s) != queried.end();
}

std::vector<int> queryable_states(const Mdp& mdp) {
  std::vector<int> out;
  for (int s : mdp.start_states()) {
    if (!mdp.is_terminal(s)) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double action_entropy(std::span<const PosteriorSample> samples, int s) {
  if (samples.empty()) return 0.0;
  const int A = samples.front().policy.num_actions();
  std::vector<double> mass(static_cast<std::size_t>(A), 0.0);
  for (const PosteriorSample& p : samples) {
    const std::vector<int> support = p.policy.support(s);
    for (int a : support) mass[static_cast<std::size_t>(a)] += 1.0 / static_cast<double>(support.size());
  }
  double h = 0.0;
  for (double m : mass) {
    const double p = m / static_cast<double>(samples.size());
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

int next_query(const QueryStrategy& strategy, std::span<const PosteriorSample> samples,
               const Mdp& mdp, QueryHistory& history, Rng& rng) {
  std::vector<int> open;
  for (int s : queryable_states(mdp)) {
    if (!history.was_queried(s)) open.push_back(s);
  }
  if (open.empty()) throw Error(ErrorCode::exhausted, "every queryable state has been queried");

  switch (strategy.kind) {
    case StrategyKind::scot_oracle:
      while (history.scot_next < history.scot_sequence.size()) {
        const int s = history.scot_sequence[history.scot_next].start_state;
        if (!history.was_queried(s)) return s;  // advanced by the caller on delivery
        ++history.scot_next;
      }
      break;
    case StrategyKind::max_entropy: {
      if (samples.empty()) {
        throw Error(ErrorCode::invalid_input, "max-entropy needs posterior samples");
      }
      int best = open.front();
      double best_h = -1.0;
      for (int s : open) {
        const double h = action_entropy(samples, s);
        if (h > best_h + 1e-12) {
          best_h = h;
          best = s;
        }
      }
      return best;
    }
    case StrategyKind::random:
      break;
  }
  return open[uniform_index(rng, open.size())];
}

LossCurve run_active(const Mdp& mdp, const QueryStrategy& strategy, const ActiveParams& params,
                     Rng& rng) {
  if (params.n_queries < 1) throw Error(ErrorCode::invalid_input, "n_queries must be >= 1");

  const std::vector<double> w_star(mdp.weights().begin(), mdp.weights().end());
  const OptimalSolution teacher = solve_optimal(mdp, w_star);
  const SuccessorFeatures teacher_sf = successor_features(mdp, teacher.policy);

  QueryHistory history;
  if (strategy.kind == StrategyKind::scot_oracle) {
    ScotParams sp;
    sp.horizon = params.trajectory_length;
    history.scot_sequence = scot_for_policy(mdp, teacher.policy, teacher_sf, sp, rng).selection.demos;
  }

  McmcConfig birl = params.birl;
  if (strategy.kind == StrategyKind::max_entropy) birl.posterior_samples = strategy.posterior_samples;

  LossCurve curve;
  curve.replicates = 1;
  std::vector<PosteriorSample> posterior;
  for (int q = 0; q < params.n_queries; ++q) {
    // Without a posterior yet, max-entropy's first pick is uniform.
    QueryStrategy pick = strategy;
    if (strategy.kind == StrategyKind::max_entropy && posterior.empty()) {
      pick.kind = StrategyKind::random;
    }
    const int s = next_query(pick, posterior, mdp, history, rng);
    history.queried.push_back(s);

    if (strategy.kind == StrategyKind::scot_oracle &&
        history.scot_next < history.scot_sequence.size() &&
        history.scot_sequence[history.scot_next].start_state == s) {
      history.demos.push_back(history.scot_sequence[history.scot_next++]);
      if (history.scot_next == history.scot_sequence.size()) curve.scot_exhausted_at = q + 1;
    } else {
      history.demos.push_back(rollout(mdp, teacher.policy, s, params.trajectory_length, rng, q));
    }

    birl.seed = derive_seed(params.birl.seed, static_cast<std::uint64_t>(q));
    McmcResult fit = mcmc_map(mdp, history.demos, birl);
    const LearnerEvaluation ev =
        evaluate_reward(mdp, w_star, teacher.policy, teacher_sf, fit.map_weights);
    curve.policy_loss.push_back(ev.policy_loss);
    curve.pct_incorrect.push_back(ev.pct_incorrect);
    posterior = std::move(fit.posterior);
  }
  if (strategy.kind == StrategyKind::scot_oracle && history.scot_sequence.empty()) {
    curve.scot_exhausted_at = 1;
  }
  return curve;
}

LossCurve mean_curve(std::span<const LossCurve> curves) {
  LossCurve out;
  std::size_t len = 0;
  for (const LossCurve& c : curves) len = std::max(len, c.policy_loss.size());
  out.policy_loss.assign(len, 0.0);
  out.pct_incorrect.assign(len, 0.0);
  int n = 0;
  for (const LossCurve& c : curves) {
    if (c.policy_loss.empty()) continue;
    ++n;
    for (std::size_t i = 0; i < len; ++i) {
      const std::size_t j = std::min(i, c.policy_loss.size() - 1);
      out.policy_loss[i] += c.policy_loss[j];
      out.pct_incorrect[i] += c.pct_incorrect[j];
    }
  }
  for (std::size_t i = 0; i < len && n > 0; ++i) {
    out.policy_loss[i] /= n;
    out.pct_incorrect[i] /= n;
  }
  out.replicates = n;
  return out;
}

}  // namespace mtirl
