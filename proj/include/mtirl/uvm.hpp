#pragma once

// Uncertainty volume minimization baseline: greedily add the trajectory that
// most shrinks a Monte Carlo estimate of the demonstration cone's volume in
// the box [-1, 1]^k.

#include <cstddef>
#include <span>
#include <vector>

#include "mtirl/bec.hpp"
#include "mtirl/random.hpp"
#include "mtirl/scot.hpp"

namespace mtirl {

/// A fixed set of uniform samples from [-1, 1]^dim.
class VolumeSampler {
 public:
  VolumeSampler(std::size_t dim, std::size_t count, Rng& rng);

  std::size_t dim() const { return dim_; }
  std::size_t count() const { return count_; }
  /// Fraction of samples with w.n >= 0 for every normal (no tolerance).
  double volume(const HalfSpaceSet& hs) const;
  /// Sample j as a dim-vector.
  std::vector<double> sample(std::size_t j) const;

 private:
  std::size_t dim_;
  std::size_t count_;
  std::vector<double> coords_;  // coords_[d * count_ + j]
};

/// G(D): Monte Carlo volume fraction with `n_samples` fresh samples.
double uncertainty_volume(const HalfSpaceSet& hs, std::size_t n_samples, Rng& rng);

struct UvmParams {
  std::size_t samples = 100000;
  int rollouts_per_start = 1;  // K
  int horizon = 1;
};

struct UvmResult {
  DemonstrationSet selection;
  std::vector<double> volumes;  // G after each addition
  HalfSpaceSet cone;            // BEC(D | pi*)
};

UvmResult uvm_for_policy(const Mdp& mdp, const Policy& policy, const SuccessorFeatures& sf,
                         const UvmParams& params, Rng& rng);

UvmResult uvm(const Mdp& mdp, std::span<const double> w_star, const UvmParams& params, Rng& rng);

}  // namespace mtirl
