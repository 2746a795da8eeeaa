#include "mtirl/uvm.hpp"

#include "mtirl/error.hpp"
#include "mtirl/kernels.hpp"

namespace mtirl {

VolumeSampler::VolumeSampler(std::size_t dim, std::size_t count, Rng& rng)
    : dim_(dim), count_(count), coords_(dim * count) {
  if (count == 0) throw Error(ErrorCode::invalid_input, "volume estimate needs at least one sample");
  for (std::size_t j = 0; j < count; ++j) {
    for (std::size_t d = 0; d < dim; ++d) coords_[d * count + j] = uniform(rng, -1.0, 1.0);
  }
}

double VolumeSampler::volume(const HalfSpaceSet& hs) const {
  if (hs.dim() != dim_) throw Error(ErrorCode::dimension_mismatch, "volume: cone dimension");
  const std::size_t inside = kernels::count_in_cone(hs.flat(), dim_, coords_, count_);
  return static_cast<double>(inside) / static_cast<double>(count_);
}

std::vector<double> VolumeSampler::sample(std::size_t j) const {
  std::vector<double> w(dim_);
  for (std::size_t d = 0; d < dim_; ++d) w[d] = coords_[d * count_ + j];
  return w;
}

double uncertainty_volume(const HalfSpaceSet& hs, std::size_t n_samples, Rng& rng) {
  const VolumeSampler sampler(hs.dim(), n_samples, rng);
  return sampler.volume(hs);
}

UvmResult uvm_for_policy(const Mdp& mdp, const Policy& policy, const SuccessorFeatures& sf,
                         const UvmParams& params, Rng& rng) {
  if (params.rollouts_per_start < 1 || params.horizon < 1) {
    throw Error(ErrorCode::invalid_input, "K and horizon must be at least 1");
  }
  if (mdp.start_states().empty()) throw Error(ErrorCode::invalid_input, "MDP has no start states");
  const auto dim = static_cast<std::size_t>(mdp.num_features());
  const VolumeSampler sampler(dim, params.samples, rng);

  UvmResult result;
  result.cone = HalfSpaceSet(dim);
  result.selection.covered = HalfSpaceSet(dim);
  double current = sampler.volume(result.cone);

  for (;;) {
    const Demonstration* best = nullptr;
    HalfSpaceSet best_cone;
    double best_volume = current;
    std::vector<Demonstration> candidates;
    for (int s0 : mdp.start_states()) {
      for (int j = 0; j < params.rollouts_per_start; ++j) {
        candidates.push_back(rollout(mdp, policy, s0, params.horizon, rng, j));
      }
    }
    for (const Demonstration& zeta : candidates) {
      if (zeta.steps.empty()) continue;
      bool known = false;
      for (const auto& d : result.selection.demos) known = known || d.same_path(zeta);
      if (known) continue;
      HalfSpaceSet cone = result.cone;
      cone.append(bec_of_demos(mdp, policy, sf, std::span(&zeta, 1)));
      const double g = sampler.volume(cone);
      if (g < best_volume) {
        best_volume = g;
        best = &zeta;
        best_cone = std::move(cone);
      }
    }
    if (best == nullptr) break;
    result.selection.demos.push_back(*best);
    result.cone = std::move(best_cone);
    result.volumes.push_back(best_volume);
    current = best_volume;
  }
  result.selection.covered = result.cone;
  return result;
}

UvmResult uvm(const Mdp& mdp, std::span<const double> w_star, const UvmParams& params, Rng& rng) {
  const OptimalSolution opt = solve_optimal(mdp, w_star);
  const SuccessorFeatures sf = successor_features(mdp, opt.policy);
  return uvm_for_policy(mdp, opt.policy, sf, params, rng);
}

}  // namespace mtirl
