#pragma once

// Tabular MDPs with linear state rewards R(s) = w . phi(s), the stochastic
// optimal policy, successor features and the evaluation losses.
//
// Terminal states are absorbing and their reward is collected exactly once:
// V(t) = R(t), mu(t) = phi(t).

#include <cstddef>
#include <span>
#include <vector>

namespace mtirl {

inline constexpr double kTieTolerance = 1e-8;
inline constexpr double kValueTolerance = 1e-10;
inline constexpr double kFeatureTolerance = 1e-10;
inline constexpr double kProbabilityTolerance = 1e-9;

struct Transition {
  int next;
  double prob;
};

class Mdp {
 public:
  /// `transitions[s * num_actions + a]` lists the successors of (s, a);
  /// `features` is row-major num_states x num_features.
  Mdp(int num_states, int num_actions, std::vector<std::vector<Transition>> transitions,
      int num_features, std::vector<double> features, std::vector<double> weights,
      double discount, std::vector<int> start_states, std::vector<int> terminals);

  int num_states() const { return num_states_; }
  int num_actions() const { return num_actions_; }
  int num_features() const { return num_features_; }
  double discount() const { return discount_; }

  std::span<const Transition> successors(int s, int a) const;
  double transition_prob(int s, int a, int next) const;

  std::span<const double> features(int s) const;
  std::span<const double> feature_matrix() const { return features_; }
  std::span<const double> weights() const { return weights_; }

  /// w . phi(s)
  double reward(int s, std::span<const double> w) const;
  double reward(int s) const { return reward(s, weights_); }

  const std::vector<int>& start_states() const { return start_states_; }
  bool is_terminal(int s) const { return terminal_[static_cast<std::size_t>(s)] != 0; }
  std::vector<int> terminals() const;
  const std::vector<char>& terminal_mask() const { return terminal_; }

  /// Copy with different reward weights (same dynamics and features).
  Mdp with_weights(std::vector<double> weights) const;

 private:
  void validate() const;

  int num_states_;
  int num_actions_;
  int num_features_;
  double discount_;
  std::vector<std::size_t> offsets_;  // CSR over (s, a)
  std::vector<Transition> entries_;
  std::vector<double> features_;
  std::vector<double> weights_;
  std::vector<int> start_states_;
  std::vector<char> terminal_;
};

class Policy {
 public:
  Policy() = default;
  /// Row-major num_states x num_actions probabilities; rows must sum to 1.
  Policy(int num_states, int num_actions, std::vector<double> probs);

  /// Uniform over actions whose Q is within `tie` of the row maximum.
  static Policy stochastic_optimal(int num_states, int num_actions,
                                   std::span<const double> q, double tie = kTieTolerance);
  static Policy deterministic(int num_actions, std::span<const int> actions);

  int num_states() const { return num_states_; }
  int num_actions() const { return num_actions_; }
  double prob(int s, int a) const {
    return probs_[static_cast<std::size_t>(s) * num_actions_ + a];
  }
  std::span<const double> row(int s) const;
  bool is_support(int s, int a) const { return prob(s, a) > 0.0; }
  std::vector<int> support(int s) const;
  /// Lowest-index action with positive probability.
  int first_action(int s) const;
  /// Per-state bitmask of supported actions (num_actions <= 32).
  std::vector<unsigned> signature() const;

  friend bool operator==(const Policy&, const Policy&) = default;

 private:
  int num_states_ = 0;
  int num_actions_ = 0;
  std::vector<double> probs_;
};

struct ValueSolution {
  int num_actions = 0;
  std::vector<double> values;  // V(s)
  std::vector<double> q;       // Q(s, a), row-major
  int sweeps = 0;

  double q_value(int s, int a) const { return q[static_cast<std::size_t>(s) * num_actions + a]; }
};

struct OptimalSolution {
  ValueSolution value;
  Policy policy;
};

/// Value iteration to a sup-norm change below kValueTolerance, then the
/// stochastic optimal policy. `warm_start` (size num_states) seeds V.
OptimalSolution solve_optimal(const Mdp& mdp, std::span<const double> weights,
                              std::span<const double> warm_start = {});
OptimalSolution solve_optimal(const Mdp& mdp);

/// V(s) - max_a (R(s) + gamma E V(s')) in sup norm, terminals excluded.
double bellman_optimality_residual(const Mdp& mdp, std::span<const double> weights,
                                   std::span<const double> values);

class SuccessorFeatures {
 public:
  SuccessorFeatures() = default;
  SuccessorFeatures(int num_states, int num_actions, int num_features,
                    std::vector<double> per_state, std::vector<double> per_state_action);

  int num_states() const { return num_states_; }
  int num_actions() const { return num_actions_; }
  int num_features() const { return num_features_; }
  std::span<const double> state(int s) const;
  std::span<const double> state_action(int s, int a) const;

 private:
  int num_states_ = 0;
  int num_actions_ = 0;
  int num_features_ = 0;
  std::vector<double> per_state_;
  std::vector<double> per_state_action_;
};

/// Jacobi fixed-point iteration from zero for
///   mu(s)   = phi(s) + gamma E_{a~pi, s'}[mu(s')]
///   mu(s,a) = phi(s) + gamma E_{s'|s,a}[mu(s')]
/// until the per-state sup-norm change is below kFeatureTolerance.
SuccessorFeatures successor_features(const Mdp& mdp, const Policy& policy);

/// Largest Bellman residual over both successor-feature equations.
double successor_feature_residual(const Mdp& mdp, const Policy& policy,
                                  const SuccessorFeatures& sf);

/// Uniform distribution over the MDP's start states.
std::vector<double> start_distribution(const Mdp& mdp);

/// w . E_{s0 ~ start}[mu(s0)]
double expected_return(std::span<const double> w, const SuccessorFeatures& sf,
                       std::span<const double> start_dist);

/// w*^T (mu_{pi*} - mu_{pi_hat}) under the start distribution.
double policy_loss(std::span<const double> w_star, const SuccessorFeatures& sf_star,
                   const SuccessorFeatures& sf_hat, std::span<const double> start_dist);

/// Percentage of non-terminal states where `learned` supports an action that
/// `reference` does not. `terminal_mask` may be empty (no terminals).
double action_mismatch_rate(const Policy& reference, const Policy& learned,
                            std::span<const char> terminal_mask = {});

}  // namespace mtirl
