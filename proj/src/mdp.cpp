#include "mtirl/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "mtirl/error.hpp"
#include "mtirl/kernels.hpp"

namespace mtirl {
namespace {

constexpr int kMaxSweeps = 1'000'000;

std::size_t idx(int s, int a, int num_actions) {
  return static_cast<std::size_t>(s) * static_cast<std::size_t>(num_actions) +
         static_cast<std::size_t>(a);
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

void check_weights(const Mdp& mdp, std::span<const double> w) {
  if (static_cast<int>(w.size()) != mdp.num_features()) {
    throw Error(ErrorCode::dimension_mismatch,
                "weights have " + std::to_string(w.size()) + " entries, expected " +
                    std::to_string(mdp.num_features()));
  }
  if (!all_finite(w)) throw Error(ErrorCode::invalid_input, "non-finite reward weights");
}

}  // namespace

Mdp::Mdp(int num_states, int num_actions, std::vector<std::vector<Transition>> transitions,
         int num_features, std::vector<double> features, std::vector<double> weights,
         double discount, std::vector<int> start_states, std::vector<int> terminals)
    : num_states_(num_states),
      num_actions_(num_actions),
      num_features_(num_features),
      discount_(discount),
      features_(std::move(features)),
      weights_(std::move(weights)),
      start_states_(std::move(start_states)) {
  if (num_states <= 0 || num_actions <= 0 || num_features <= 0) {
    throw Error(ErrorCode::invalid_input, "state, action and feature counts must be positive");
  }
  if (num_actions > 32) throw Error(ErrorCode::invalid_input, "at most 32 actions supported");
  if (transitions.size() != static_cast<std::size_t>(num_states) * num_actions) {
    throw Error(ErrorCode::dimension_mismatch, "transition table must have num_states*num_actions rows");
  }
  offsets_.reserve(transitions.size() + 1);
  offsets_.push_back(0);
  for (auto& row : transitions) {
    // merge repeated successors so each (s, a, s') appears once
    std::sort(row.begin(), row.end(), [](const Transition& x, const Transition& y) { return x.next < y.next; });
    for (const Transition& t : row) {
      if (t.next < 0 || t.next >= num_states) {
        throw Error(ErrorCode::invalid_input, "transition target out of range");
      }
      if (!entries_.empty() && entries_.size() > offsets_.back() && entries_.back().next == t.next) {
        entries_.back().prob += t.prob;
      } else {
        entries_.push_back(t);
      }
    }
    offsets_.push_back(entries_.size());
  }
  terminal_.assign(static_cast<std::size_t>(num_states), 0);
  for (int t : terminals) {
    if (t < 0 || t >= num_states) throw Error(ErrorCode::invalid_input, "terminal state out of range");
    terminal_[static_cast<std::size_t>(t)] = 1;
  }
  validate();
}

void Mdp::validate() const {
  if (!(discount_ >= 0.0 && discount_ < 1.0)) {
    throw Error(ErrorCode::invalid_input, "discount must lie in [0, 1)");
  }
  if (features_.size() != static_cast<std::size_t>(num_states_) * num_features_) {
    throw Error(ErrorCode::dimension_mismatch, "feature matrix must be num_states x num_features");
  }
  if (!all_finite(features_)) throw Error(ErrorCode::invalid_input, "non-finite features");
  check_weights(*this, weights_);
  for (int s : start_states_) {
    if (s < 0 || s >= num_states_) throw Error(ErrorCode::invalid_input, "start state out of range");
  }
  for (int s = 0; s < num_states_; ++s) {
    for (int a = 0; a < num_actions_; ++a) {
      double total = 0.0;
      for (const Transition& t : successors(s, a)) {
        if (!(t.prob >= 0.0 && t.prob <= 1.0)) {
          throw Error(ErrorCode::invalid_input, "transition probability outside [0, 1]");
        }
        total += t.prob;
      }
      if (std::fabs(total - 1.0) > kProbabilityTolerance) {
        throw Error(ErrorCode::invalid_input, "transition row (" + std::to_string(s) + ", " +
                                                  std::to_string(a) + ") sums to " + std::to_string(total));
      }
      if (is_terminal(s) && std::fabs(transition_prob(s, a, s) - 1.0) > kProbabilityTolerance) {
        throw Error(ErrorCode::invalid_input, "terminal state " + std::to_string(s) + " is not absorbing");
      }
    }
  }
}

std::span<const Transition> Mdp::successors(int s, int a) const {
  const std::size_t i = idx(s, a, num_actions_);
  return {entries_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
}

double Mdp::transition_prob(int s, int a, int next) const {
  for (const Transition& t : successors(s, a)) {
    if (t.next == next) return t.prob;
  }
  return 0.0;
}

std::span<const double> Mdp::features(int s) const {
  return {features_.data() + static_cast<std::size_t>(s) * num_features_,
          static_cast<std::size_t>(num_features_)};
}

double Mdp::reward(int s, std::span<const double> w) const {
  const auto phi = features(s);
  double r = 0.0;
  for (int i = 0; i < num_features_; ++i) r += w[static_cast<std::size_t>(i)] * phi[static_cast<std::size_t>(i)];
  return r;
}

std::vector<int> Mdp::terminals() const {
  std::vector<int> out;
  for (int s = 0; s < num_states_; ++s) {
    if (is_terminal(s)) out.push_back(s);
  }
  return out;
}

Mdp Mdp::with_weights(std::vector<double> weights) const {
  check_weights(*this, weights);
  Mdp copy = *this;
  copy.weights_ = std::move(weights);
  return copy;
}

// ---------------------------------------------------------------------------

Policy::Policy(int num_states, int num_actions, std::vector<double> probs)
    : num_states_(num_states), num_actions_(num_actions), probs_(std::move(probs)) {
  if (probs_.size() != static_cast<std::size_t>(num_states) * num_actions) {
    throw Error(ErrorCode::dimension_mismatch, "policy must be num_states x num_actions");
  }
  for (int s = 0; s < num_states; ++s) {
    double total = 0.0;
    for (double p : row(s)) {
      if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::invalid_input, "policy probability outside [0, 1]");
      total += p;
    }
    if (std::fabs(total - 1.0) > kProbabilityTolerance) {
      throw Error(ErrorCode::invalid_input, "policy row " + std::to_string(s) + " does not sum to 1");
    }
  }
}

Policy Policy::stochastic_optimal(int num_states, int num_actions, std::span<const double> q,
                                  double tie) {
  std::vector<double> probs(static_cast<std::size_t>(num_states) * num_actions, 0.0);
  for (int s = 0; s < num_states; ++s) {
    const auto row = q.subspan(idx(s, 0, num_actions), static_cast<std::size_t>(num_actions));
    const double best = *std::max_element(row.begin(), row.end());
    int count = 0;
    for (double v : row) count += v >= best - tie ? 1 : 0;
    for (int a = 0; a < num_actions; ++a) {
      if (row[static_cast<std::size_t>(a)] >= best - tie) probs[idx(s, a, num_actions)] = 1.0 / count;
    }
  }
  return Policy(num_states, num_actions, std::move(probs));
}

Policy Policy::deterministic(int num_actions, std::span<const int> actions) {
  const int num_states = static_cast<int>(actions.size());
  std::vector<double> probs(static_cast<std::size_t>(num_states) * num_actions, 0.0);
  for (int s = 0; s < num_states; ++s) {
    const int a = actions[static_cast<std::size_t>(s)];
    if (a < 0 || a >= num_actions) throw Error(ErrorCode::invalid_input, "action out of range");
    probs[idx(s, a, num_actions)] = 1.0;
  }
  return Policy(num_states, num_actions, std::move(probs));
}

std::span<const double> Policy::row(int s) const {
  return {probs_.data() + idx(s, 0, num_actions_), static_cast<std::size_t>(num_actions_)};
}

std::vector<int> Policy::support(int s) const {
  std::vector<int> out;
  for (int a = 0; a < num_actions_; ++a) {
    if (is_support(s, a)) out.push_back(a);
  }
  return out;
}

int Policy::first_action(int s) const {
  for (int a = 0; a < num_actions_; ++a) {
    if (is_support(s, a)) return a;
  }
  return 0;
}

std::vector<unsigned> Policy::signature() const {
  std::vector<unsigned> sig(static_cast<std::size_t>(num_states_), 0u);
  for (int s = 0; s < num_states_; ++s) {
    for (int a = 0; a < num_actions_; ++a) {
      if (is_support(s, a)) sig[static_cast<std::size_t>(s)] |= 1u << a;
    }
  }
  return sig;
}

// ---------------------------------------------------------------------------

OptimalSolution solve_optimal(const Mdp& mdp, std::span<const double> weights,
                              std::span<const double> warm_start) {
  check_weights(mdp, weights);
  const int S = mdp.num_states();
  const int A = mdp.num_actions();
  const double gamma = mdp.discount();

  std::vector<double> rewards(static_cast<std::size_t>(S));
  for (int s = 0; s < S; ++s) rewards[static_cast<std::size_t>(s)] = mdp.reward(s, weights);

  std::vector<double> v(static_cast<std::size_t>(S), 0.0);
  if (warm_start.size() == v.size() && all_finite(warm_start)) {
    std::copy(warm_start.begin(), warm_start.end(), v.begin());
  }
  std::vector<double> next(v.size());

  int sweeps = 0;
  for (;; ++sweeps) {
    if (sweeps >= kMaxSweeps) throw Error(ErrorCode::numerical, "value iteration did not converge");
    for (int s = 0; s < S; ++s) {
      const auto su = static_cast<std::size_t>(s);
      if (mdp.is_terminal(s)) {
        next[su] = rewards[su];
        continue;
      }
      double best = -std::numeric_limits<double>::infinity();
      for (int a = 0; a < A; ++a) {
        double ev = 0.0;
        for (const Transition& t : mdp.successors(s, a)) ev += t.prob * v[static_cast<std::size_t>(t.next)];
        best = std::max(best, ev);
      }
      next[su] = rewards[su] + gamma * best;
    }
    const double change = kernels::max_abs_diff(next, v);
    v.swap(next);
    if (change < kValueTolerance) break;
  }

  ValueSolution sol;
  sol.num_actions = A;
  sol.sweeps = sweeps + 1;
  sol.q.assign(static_cast<std::size_t>(S) * A, 0.0);
  for (int s = 0; s < S; ++s) {
    const auto su = static_cast<std::size_t>(s);
    for (int a = 0; a < A; ++a) {
      double q = rewards[su];
      if (!mdp.is_terminal(s)) {
        double ev = 0.0;
        for (const Transition& t : mdp.successors(s, a)) ev += t.prob * v[static_cast<std::size_t>(t.next)];
        q += gamma * ev;
      }
      sol.q[idx(s, a, A)] = q;
    }
  }
  sol.values = std::move(v);
  Policy policy = Policy::stochastic_optimal(S, A, sol.q);
  return {std::move(sol), std::move(policy)};
}

OptimalSolution solve_optimal(const Mdp& mdp) { return solve_optimal(mdp, mdp.weights()); }

double bellman_optimality_residual(const Mdp& mdp, std::span<const double> weights,
                                   std::span<const double> values) {
  double worst = 0.0;
  for (int s = 0; s < mdp.num_states(); ++s) {
    if (mdp.is_terminal(s)) continue;
    double best = -std::numeric_limits<double>::infinity();
    for (int a = 0; a < mdp.num_actions(); ++a) {
      double ev = 0.0;
      for (const Transition& t : mdp.successors(s, a)) ev += t.prob * values[static_cast<std::size_t>(t.next)];
      best = std::max(best, ev);
    }
    const double target = mdp.reward(s, weights) + mdp.discount() * best;
    worst = std::max(worst, std::fabs(values[static_cast<std::size_t>(s)] - target));
  }
  return worst;
}

// ---------------------------------------------------------------------------

SuccessorFeatures::SuccessorFeatures(int num_states, int num_actions, int num_features,
                                     std::vector<double> per_state,
                                     std::vector<double> per_state_action)
    : num_states_(num_states),
      num_actions_(num_actions),
      num_features_(num_features),
      per_state_(std::move(per_state)),
      per_state_action_(std::move(per_state_action)) {}

std::span<const double> SuccessorFeatures::state(int s) const {
  return {per_state_.data() + static_cast<std::size_t>(s) * num_features_,
          static_cast<std::size_t>(num_features_)};
}

std::span<const double> SuccessorFeatures::state_action(int s, int a) const {
  return {per_state_action_.data() + idx(s, a, num_actions_) * num_features_,
          static_cast<std::size_t>(num_features_)};
}

SuccessorFeatures successor_features(const Mdp& mdp, const Policy& policy) {
  const int S = mdp.num_states();
  const int A = mdp.num_actions();
  const int k = mdp.num_features();
  if (policy.num_states() != S || policy.num_actions() != A) {
    throw Error(ErrorCode::dimension_mismatch, "policy shape does not match the MDP");
  }
  const double gamma = mdp.discount();
  const auto K = static_cast<std::size_t>(k);

  std::vector<double> mu(static_cast<std::size_t>(S) * K, 0.0);
  std::vector<double> next(mu.size());
  std::vector<double> acc(K);

  auto expected_next = [&](int s, int a, double weight, std::span<double> out) {
    for (const Transition& t : mdp.successors(s, a)) {
      kernels::axpy(weight * t.prob,
                    std::span<const double>(mu.data() + static_cast<std::size_t>(t.next) * K, K), out);
    }
  };

  for (int sweep = 0;; ++sweep) {
    if (sweep >= kMaxSweeps) throw Error(ErrorCode::numerical, "successor features did not converge");
    for (int s = 0; s < S; ++s) {
      std::span<double> out(next.data() + static_cast<std::size_t>(s) * K, K);
      const auto phi = mdp.features(s);
      std::copy(phi.begin(), phi.end(), out.begin());
      if (mdp.is_terminal(s)) continue;
      std::fill(acc.begin(), acc.end(), 0.0);
      for (int a = 0; a < A; ++a) {
        const double p = policy.prob(s, a);
        if (p > 0.0) expected_next(s, a, p, acc);
      }
      kernels::axpy(gamma, acc, out);
    }
    const double change = kernels::max_abs_diff(next, mu);
    mu.swap(next);
    if (change < kFeatureTolerance) break;
  }

  std::vector<double> mu_sa(static_cast<std::size_t>(S) * A * K, 0.0);
  for (int s = 0; s < S; ++s) {
    const auto phi = mdp.features(s);
    for (int a = 0; a < A; ++a) {
      std::span<double> out(mu_sa.data() + idx(s, a, A) * K, K);
      std::copy(phi.begin(), phi.end(), out.begin());
      if (mdp.is_terminal(s)) continue;
      std::fill(acc.begin(), acc.end(), 0.0);
      expected_next(s, a, 1.0, acc);
      kernels::axpy(gamma, acc, out);
    }
  }
  return SuccessorFeatures(S, A, k, std::move(mu), std::move(mu_sa));
}

double successor_feature_residual(const Mdp& mdp, const Policy& policy,
                                  const SuccessorFeatures& sf) {
  const int k = mdp.num_features();
  double worst = 0.0;
  std::vector<double> expect(static_cast<std::size_t>(k));
  std::vector<double> mixed(static_cast<std::size_t>(k));
  for (int s = 0; s < mdp.num_states(); ++s) {
    std::fill(mixed.begin(), mixed.end(), 0.0);
    const auto phi = mdp.features(s);
    for (int a = 0; a < mdp.num_actions(); ++a) {
      const auto msa = sf.state_action(s, a);
      for (int i = 0; i < k; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        double e = 0.0;
        if (!mdp.is_terminal(s)) {
          for (const Transition& t : mdp.successors(s, a)) e += t.prob * sf.state(t.next)[iu];
        }
        expect[iu] = phi[iu] + mdp.discount() * e;
        worst = std::max(worst, std::fabs(msa[iu] - expect[iu]));
        mixed[iu] += policy.prob(s, a) * msa[iu];
      }
    }
    const auto ms = sf.state(s);
    for (int i = 0; i < k; ++i) {
      const auto iu = static_cast<std::size_t>(i);
      const double target = mdp.is_terminal(s) ? phi[iu] : mixed[iu];
      worst = std::max(worst, std::fabs(ms[iu] - target));
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------

std::vector<double> start_distribution(const Mdp& mdp) {
  if (mdp.start_states().empty()) throw Error(ErrorCode::invalid_input, "MDP has no start states");
  std::vector<double> dist(static_cast<std::size_t>(mdp.num_states()), 0.0);
  const double p = 1.0 / static_cast<double>(mdp.start_states().size());
  for (int s : mdp.start_states()) dist[static_cast<std::size_t>(s)] += p;
  return dist;
}

double expected_return(std::span<const double> w, const SuccessorFeatures& sf,
                       std::span<const double> start_dist) {
  if (static_cast<int>(w.size()) != sf.num_features() ||
      static_cast<int>(start_dist.size()) != sf.num_states()) {
    throw Error(ErrorCode::dimension_mismatch, "expected_return: dimensions disagree");
  }
  double total = 0.0;
  for (int s = 0; s < sf.num_states(); ++s) {
    const double p = start_dist[static_cast<std::size_t>(s)];
    if (p == 0.0) continue;
    const auto mu = sf.state(s);
    double dot = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) dot += w[i] * mu[i];
    total += p * dot;
  }
  return total;
}

double policy_loss(std::span<const double> w_star, const SuccessorFeatures& sf_star,
                   const SuccessorFeatures& sf_hat, std::span<const double> start_dist) {
  if (sf_star.num_states() != sf_hat.num_states() || sf_star.num_features() != sf_hat.num_features()) {
    throw Error(ErrorCode::dimension_mismatch, "policy_loss: successor features disagree in shape");
  }
  if (static_cast<int>(w_star.size()) != sf_star.num_features() ||
      static_cast<int>(start_dist.size()) != sf_star.num_states()) {
    throw Error(ErrorCode::dimension_mismatch, "policy_loss: dimensions disagree");
  }
  double total = 0.0;
  for (int s = 0; s < sf_star.num_states(); ++s) {
    const double p = start_dist[static_cast<std::size_t>(s)];
    if (p == 0.0) continue;
    const auto a = sf_star.state(s);
    const auto b = sf_hat.state(s);
    double dot = 0.0;
    for (std::size_t i = 0; i < w_star.size(); ++i) dot += w_star[i] * (a[i] - b[i]);
    total += p * dot;
  }
  return total;
}

double action_mismatch_rate(const Policy& reference, const Policy& learned,
                            std::span<const char> terminal_mask) {
  if (reference.num_states() != learned.num_states() || reference.num_actions() != learned.num_actions()) {
    throw Error(ErrorCode::dimension_mismatch, "action_mismatch_rate: policy shapes differ");
  }
  if (!terminal_mask.empty() && static_cast<int>(terminal_mask.size()) != reference.num_states()) {
    throw Error(ErrorCode::dimension_mismatch, "action_mismatch_rate: terminal mask size");
  }
  int counted = 0;
  int wrong = 0;
  for (int s = 0; s < reference.num_states(); ++s) {
    if (!terminal_mask.empty() && terminal_mask[static_cast<std::size_t>(s)]) continue;
    ++counted;
    for (int a = 0; a < reference.num_actions(); ++a) {
      if (learned.is_support(s, a) && !reference.is_support(s, a)) {
        ++wrong;
        break;
      }
    }
  }
  return counted == 0 ? 0.0 : 100.0 * wrong / counted;
}

}  // namespace mtirl
