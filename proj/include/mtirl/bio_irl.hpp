#pragma once

// Informativeness-aware BIRL. A demonstration set is scored by how closely
// its cone normals match BEC(pi*) under a hypothesis reward, compared with an
// equally sized prefix of the set-cover teaching set for that reward.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "mtirl/bec.hpp"
#include "mtirl/birl.hpp"
#include "mtirl/mdp.hpp"
#include "mtirl/scot.hpp"

namespace mtirl {

/// 1 - acos(x.y) / pi for unit vectors; the dot product is clamped to [-1, 1].
double angular_similarity(std::span<const double> x, std::span<const double> y);

/// Greedy matching in `demo` order: each demo normal takes its most similar
/// remaining target (which is then removed). Returns the summed similarity
/// divided by |target|.
double ang_sim_match(const HalfSpaceSet& demo, const HalfSpaceSet& target);

struct InfoGapParams {
  ScotParams scot;
  std::uint64_t seed = 0;  // rollout seed of the counterfactual teaching set
};

/// Per-policy cache of BEC(pi*) and the teaching set, shareable across threads.
class InfoGapModel {
 public:
  struct Entry {
    Policy policy;
    SuccessorFeatures sf;
    HalfSpaceSet universe;  // pruned BEC(pi*)
    std::vector<Demonstration> teaching;
  };

  InfoGapModel(const Mdp& mdp, InfoGapParams params);

  const Mdp& mdp() const { return *mdp_; }
  const InfoGapParams& params() const { return params_; }

  /// infoGap for demos under the stochastic optimal policy of `w`.
  double info_gap(std::span<const Demonstration> demos, std::span<const double> w);
  /// Same, for an already-solved optimal policy.
  double info_gap(std::span<const Demonstration> demos, const Policy& policy);

  std::shared_ptr<const Entry> entry_for(const Policy& policy);
  /// A cached entry whose (non-empty) BEC contains w, if any.
  std::shared_ptr<const Entry> find_containing(std::span<const double> w) const;

  std::size_t cache_size() const;
  std::size_t misses() const;

 private:
  double gap_for(std::span<const Demonstration> demos, const Entry& entry) const;

  const Mdp* mdp_;
  InfoGapParams params_;
  mutable std::mutex mutex_;
  std::map<std::vector<unsigned>, std::shared_ptr<const Entry>> cache_;
  std::size_t misses_ = 0;
};

/// Uncached infoGap.
double info_gap(std::span<const Demonstration> demos, std::span<const double> w, const Mdp& mdp,
                const InfoGapParams& params);

/// log_likelihood - lambda * infoGap.
double bio_log_likelihood(std::span<const Demonstration> demos, std::span<const double> w,
                          double alpha, double lambda, InfoGapModel& model);
double bio_log_likelihood(std::span<const Demonstration> demos, std::span<const double> w,
                          double alpha, double lambda, const Mdp& mdp, const InfoGapParams& params);

/// Likelihood for mcmc_map. `model` must outlive the chain.
LikelihoodFn bio_likelihood(std::span<const Demonstration> demos, double alpha, double lambda,
                            InfoGapModel& model);

}  // namespace mtirl
