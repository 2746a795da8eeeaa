#pragma once

// Bayesian IRL with the Boltzmann (softmax over Q*) demonstration likelihood
// and a Metropolis-Hastings random walk over reward weights in [-1, 1]^k.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mtirl/bec.hpp"
#include "mtirl/mdp.hpp"

namespace mtirl {

struct McmcConfig {
  int chain_length = 10000;
  double step_size = 0.005;
  double alpha = 100.0;
  std::uint64_t seed = 0;
  int posterior_samples = 0;  // thinned chain states to keep (0 = none)
  std::vector<double> initial;  // chain start; empty = origin
};

/// sum over demonstrated (s, a) of alpha Q(s,a) - logsumexp_b alpha Q(s,b).
double log_likelihood(std::span<const Demonstration> demos, const ValueSolution& q, double alpha);

/// Same, solving Q* for weights `w` first.
double log_likelihood(std::span<const Demonstration> demos, std::span<const double> w, double alpha,
                      const Mdp& mdp);

/// Log-likelihood of a proposal given its solved optimal values and policy.
using LikelihoodFn =
    std::function<double(std::span<const double> w, const OptimalSolution& solution)>;

struct PosteriorSample {
  std::vector<double> weights;
  Policy policy;
};

struct McmcResult {
  std::vector<double> map_weights;
  double map_log_likelihood = 0.0;
  double acceptance_rate = 0.0;
  bool from_prior = false;  // no demonstrations: map_weights is a prior draw
  std::vector<PosteriorSample> posterior;
};

/// Random walk from w = 0 with isotropic Gaussian steps of std `step_size`,
/// clamped to the box. Uniform prior, so acceptance is the likelihood ratio.
/// Returns the highest-likelihood state visited.
McmcResult mcmc_map(const Mdp& mdp, std::span<const Demonstration> demos, const McmcConfig& config,
                    const LikelihoodFn& likelihood);

/// BIRL: mcmc_map with the softmax likelihood.
McmcResult mcmc_map(const Mdp& mdp, std::span<const Demonstration> demos, const McmcConfig& config);

/// Loss summary of a learned reward against the teacher.
struct LearnerEvaluation {
  double policy_loss = 0.0;
  double pct_incorrect = 0.0;
  Policy policy;
};

LearnerEvaluation evaluate_reward(const Mdp& mdp, std::span<const double> w_star,
                                  const Policy& teacher_policy, const SuccessorFeatures& teacher_sf,
                                  std::span<const double> w_hat);

}  // namespace mtirl
