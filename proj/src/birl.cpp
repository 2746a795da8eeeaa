#include "mtirl/birl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mtirl/error.hpp"
#include "mtirl/random.hpp"

namespace mtirl {

double log_likelihood(std::span<const Demonstration> demos, const ValueSolution& q, double alpha) {
  const int A = q.num_actions;
  double total = 0.0;
  std::vector<double> scaled(static_cast<std::size_t>(A));
  for (const Demonstration& demo : demos) {
    for (const auto& [s, a] : demo.steps) {
      double top = -std::numeric_limits<double>::infinity();
      for (int b = 0; b < A; ++b) {
        scaled[static_cast<std::size_t>(b)] = alpha * q.q_value(s, b);
        top = std::max(top, scaled[static_cast<std::size_t>(b)]);
      }
      double z = 0.0;
      for (double x : scaled) z += std::exp(x - top);
      total += scaled[static_cast<std::size_t>(a)] - (top + std::log(z));
    }
  }
  return total;
}

double log_likelihood(std::span<const Demonstration> demos, std::span<const double> w, double alpha,
                      const Mdp& mdp) {
  return log_likelihood(demos, solve_optimal(mdp, w).value, alpha);
}

McmcResult mcmc_map(const Mdp& mdp, std::span<const Demonstration> demos, const McmcConfig& config,
                    const LikelihoodFn& likelihood) {
  if (config.chain_length < 1) throw Error(ErrorCode::invalid_input, "chain_length must be >= 1");
  if (!(config.step_size > 0.0)) throw Error(ErrorCode::invalid_input, "step_size must be positive");
  if (!(config.alpha >= 0.0)) throw Error(ErrorCode::invalid_input, "alpha must be non-negative");

  const auto k = static_cast<std::size_t>(mdp.num_features());
  Rng rng(config.seed);
  McmcResult result;

  if (pair_count(demos) == 0) {
    result.map_weights.resize(k);
    for (double& x : result.map_weights) x = uniform(rng, -1.0, 1.0);
    result.from_prior = true;
    return result;
  }

  std::vector<double> current(k, 0.0);
  if (!config.initial.empty()) {
    if (config.initial.size() != k) throw Error(ErrorCode::dimension_mismatch, "initial weights");
    current = config.initial;
  }
  OptimalSolution current_sol = solve_optimal(mdp, current);
  double current_ll = likelihood(current, current_sol);
  result.map_weights = current;
  result.map_log_likelihood = current_ll;

  const int thin = config.posterior_samples > 0
                       ? std::max(1, config.chain_length / config.posterior_samples)
                       : 0;
  int accepted = 0;
  std::vector<double> proposal(k);
  for (int step = 1; step < config.chain_length; ++step) {
    for (std::size_t i = 0; i < k; ++i) {
      proposal[i] = std::clamp(current[i] + config.step_size * standard_normal(rng), -1.0, 1.0);
    }
    OptimalSolution sol = solve_optimal(mdp, proposal, current_sol.value.values);
    const double ll = likelihood(proposal, sol);
    const double u = uniform01(rng);
    if (ll >= current_ll || u < std::exp(ll - current_ll)) {
      current = proposal;
      current_sol = std::move(sol);
      current_ll = ll;
      ++accepted;
      if (current_ll > result.map_log_likelihood) {
        result.map_log_likelihood = current_ll;
        result.map_weights = current;
      }
    }
    if (thin > 0 && (step + 1) % thin == 0 &&
        static_cast<int>(result.posterior.size()) < config.posterior_samples) {
      result.posterior.push_back({current, current_sol.policy});
    }
  }
  result.acceptance_rate =
      config.chain_length > 1 ? static_cast<double>(accepted) / (config.chain_length - 1) : 0.0;
  return result;
}

McmcResult mcmc_map(const Mdp& mdp, std::span<const Demonstration> demos, const McmcConfig& config) {
  const double alpha = config.alpha;
  return mcmc_map(mdp, demos, config,
                  [demos, alpha](std::span<const double>, const OptimalSolution& sol) {
                    return log_likelihood(demos, sol.value, alpha);
                  });
}

LearnerEvaluation evaluate_reward(const Mdp& mdp, std::span<const double> w_star,
                                  const Policy& teacher_policy, const SuccessorFeatures& teacher_sf,
                                  std::span<const double> w_hat) {
  LearnerEvaluation ev;
  ev.policy = solve_optimal(mdp, w_hat).policy;
  const SuccessorFeatures sf_hat = successor_features(mdp, ev.policy);
  ev.policy_loss = policy_loss(w_star, teacher_sf, sf_hat, start_distribution(mdp));
  ev.pct_incorrect = action_mismatch_rate(teacher_policy, ev.policy, mdp.terminal_mask());
  return ev;
}

}  // namespace mtirl
