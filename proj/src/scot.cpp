#include "mtirl/scot.hpp"

#include <string>

#include "mtirl/error.hpp"

namespace mtirl {
namespace {

int sample_index(std::span<const double> probs, Rng& rng) {
  const double u = uniform01(rng);
  double acc = 0.0;
  int last = -1;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    acc += probs[i];
    last = static_cast<int>(i);
    if (u < acc) return last;
  }
  return last;
}

}  // namespace

Demonstration rollout(const Mdp& mdp, const Policy& policy, int start, int horizon, Rng& rng,
                      int rollout_index) {
  Demonstration demo;
  demo.start_state = start;
  demo.rollout_index = rollout_index;
  int s = start;
  for (int t = 0; t < horizon && !mdp.is_terminal(s); ++t) {
    const int a = sample_index(policy.row(s), rng);
    demo.steps.emplace_back(s, a);
    const auto succ = mdp.successors(s, a);
    if (succ.size() == 1) {
      s = succ[0].next;
    } else {
      std::vector<double> p;
      p.reserve(succ.size());
      for (const Transition& tr : succ) p.push_back(tr.prob);
      s = succ[static_cast<std::size_t>(sample_index(p, rng))].next;
    }
  }
  return demo;
}

CandidatePool generate_candidates(const Mdp& mdp, const Policy& policy, const SuccessorFeatures& sf,
                                  const HalfSpaceSet& universe, int m, int horizon, Rng& rng) {
  if (mdp.start_states().empty()) throw Error(ErrorCode::invalid_input, "MDP has no start states");
  if (m < 1 || horizon < 1) throw Error(ErrorCode::invalid_input, "m and horizon must be at least 1");
  CandidatePool pool;
  for (int s0 : mdp.start_states()) {
    for (int i = 0; i < m; ++i) {
      Demonstration demo = rollout(mdp, policy, s0, horizon, rng, i);
      if (demo.steps.empty()) continue;
      bool seen = false;
      for (const auto& existing : pool.trajectories) {
        if (existing.same_path(demo)) {
          seen = true;
          break;
        }
      }
      if (seen) continue;
      const HalfSpaceSet cone = bec_of_demos(mdp, policy, sf, std::span(&demo, 1));
      std::vector<std::size_t> covers;
      for (std::size_t n = 0; n < cone.size(); ++n) {
        const std::size_t u = universe.find(cone.normal(n));
        if (u != universe.size()) covers.push_back(u);
      }
      pool.trajectories.push_back(std::move(demo));
      pool.covers.push_back(std::move(covers));
    }
  }
  return pool;
}

std::vector<std::size_t> greedy_cover_partial(std::size_t universe_size, const CandidatePool& pool,
                                              std::vector<char>* covered_out) {
  std::vector<char> covered(universe_size, 0);
  std::size_t remaining = universe_size;
  std::vector<std::size_t> order;
  while (remaining > 0) {
    std::size_t best = pool.covers.size();
    std::size_t best_gain = 0;
    for (std::size_t t = 0; t < pool.covers.size(); ++t) {
      std::size_t gain = 0;
      for (std::size_t u : pool.covers[t]) gain += covered[u] ? 0 : 1;
      if (gain > best_gain) {
        best_gain = gain;
        best = t;
      }
    }
    if (best == pool.covers.size()) break;
    for (std::size_t u : pool.covers[best]) {
      if (!covered[u]) {
        covered[u] = 1;
        --remaining;
      }
    }
    order.push_back(best);
  }
  if (covered_out) *covered_out = std::move(covered);
  return order;
}

std::vector<std::size_t> greedy_cover(std::size_t universe_size, const CandidatePool& pool) {
  std::vector<char> covered;
  std::vector<std::size_t> order = greedy_cover_partial(universe_size, pool, &covered);
  std::string missing;
  for (std::size_t u = 0; u < universe_size; ++u) {
    if (!covered[u]) missing += (missing.empty() ? "" : ",") + std::to_string(u);
  }
  if (!missing.empty()) {
    throw Error(ErrorCode::coverage_infeasible, "uncovered universe normals: " + missing);
  }
  return order;
}

ScotResult scot_for_policy(const Mdp& mdp, const Policy& policy, const SuccessorFeatures& sf,
                           const ScotParams& params, Rng& rng) {
  ScotResult result;
  HalfSpaceSet raw = bec_of_policy(mdp, policy, sf);
  result.universe = params.prune ? remove_redundant(raw) : std::move(raw);
  result.selection.covered = HalfSpaceSet(result.universe.dim());
  if (result.universe.empty()) return result;

  const CandidatePool pool =
      generate_candidates(mdp, policy, sf, result.universe, params.rollouts_per_start, params.horizon, rng);
  result.candidates = pool.trajectories.size();
  for (std::size_t t : greedy_cover(result.universe.size(), pool)) {
    result.selection.demos.push_back(pool.trajectories[t]);
    for (std::size_t u : pool.covers[t]) result.selection.covered.add_unit(result.universe.normal(u));
  }
  return result;
}

ScotResult scot(const Mdp& mdp, std::span<const double> w_star, const ScotParams& params, Rng& rng) {
  const OptimalSolution opt = solve_optimal(mdp, w_star);
  const SuccessorFeatures sf = successor_features(mdp, opt.policy);
  return scot_for_policy(mdp, opt.policy, sf, params, rng);
}

}  // namespace mtirl
