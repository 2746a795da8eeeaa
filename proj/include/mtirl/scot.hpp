#pragma once

// Set-cover teaching: cover the non-redundant normals of BEC(pi*) with as few
// demonstrations as the greedy set-cover approximation finds.

#include <cstddef>
#include <span>
#include <vector>

#include "mtirl/bec.hpp"
#include "mtirl/mdp.hpp"
#include "mtirl/random.hpp"

namespace mtirl {

struct DemonstrationSet {
  std::vector<Demonstration> demos;  // selection order
  HalfSpaceSet covered;              // universe normals covered so far

  std::size_t trajectories() const { return demos.size(); }
  std::size_t pairs() const { return pair_count(demos); }
};

struct CandidatePool {
  std::vector<Demonstration> trajectories;
  std::vector<std::vector<std::size_t>> covers;  // universe indices per trajectory
};

struct ScotParams {
  int rollouts_per_start = 1;  // m
  int horizon = 1;             // H
  bool prune = true;           // drop redundant universe normals first
};

/// Follows `policy` from `start` for at most `horizon` steps, stopping on
/// terminal entry; actions and successors are drawn with `rng`.
Demonstration rollout(const Mdp& mdp, const Policy& policy, int start, int horizon, Rng& rng,
                      int rollout_index = 0);

/// m rollouts per start state with identical paths merged; each trajectory is
/// mapped onto the universe normals its own demonstration cone contains.
CandidatePool generate_candidates(const Mdp& mdp, const Policy& policy, const SuccessorFeatures& sf,
                                  const HalfSpaceSet& universe, int m, int horizon, Rng& rng);

/// Greedy cover; ties go to the lowest pool index. Returns pool indices in
/// selection order and throws coverage_infeasible if the union falls short.
std::vector<std::size_t> greedy_cover(std::size_t universe_size, const CandidatePool& pool);

/// Greedy cover that stops when no trajectory adds coverage instead of
/// throwing. `covered`, if given, receives the per-normal coverage flags.
std::vector<std::size_t> greedy_cover_partial(std::size_t universe_size, const CandidatePool& pool,
                                              std::vector<char>* covered = nullptr);

struct ScotResult {
  DemonstrationSet selection;
  HalfSpaceSet universe;
  std::size_t candidates = 0;
};

/// Teaching set for an already-solved policy.
ScotResult scot_for_policy(const Mdp& mdp, const Policy& policy, const SuccessorFeatures& sf,
                           const ScotParams& params, Rng& rng);

/// Full pipeline from the teacher's weights.
ScotResult scot(const Mdp& mdp, std::span<const double> w_star, const ScotParams& params, Rng& rng);

}  // namespace mtirl
