#include "mtirl/bio_irl.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mtirl/error.hpp"

namespace mtirl {
namespace {

constexpr double kUnitTolerance = 1e-6;

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double similarity_unchecked(std::span<const double> x, std::span<const double> y) {
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d += x[i] * y[i];
  return 1.0 - std::acos(std::clamp(d, -1.0, 1.0)) / std::numbers::pi;
}

}  // namespace

double angular_similarity(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::dimension_mismatch, "angular_similarity");
  if (std::fabs(norm2(x) - 1.0) > kUnitTolerance || std::fabs(norm2(y) - 1.0) > kUnitTolerance) {
    throw Error(ErrorCode::invalid_input, "angular_similarity expects unit vectors");
  }
  return similarity_unchecked(x, y);
}

double ang_sim_match(const HalfSpaceSet& demo, const HalfSpaceSet& target) {
  if (target.empty()) {
    throw Error(ErrorCode::undefined_informativeness, "no target half-spaces to match against");
  }
  if (demo.dim() != target.dim() && !demo.empty()) {
    throw Error(ErrorCode::dimension_mismatch, "ang_sim_match");
  }
  std::vector<std::size_t> remaining(target.size());
  for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;
  double total = 0.0;
  for (std::size_t i = 0; i < demo.size() && !remaining.empty(); ++i) {
    std::size_t best = 0;
    double best_sim = -1.0;
    for (std::size_t r = 0; r < remaining.size(); ++r) {
      const double sim = similarity_unchecked(demo.normal(i), target.normal(remaining[r]));
      if (sim > best_sim) {
        best_sim = sim;
        best = r;
      }
    }
    total += best_sim;
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return total / static_cast<double>(target.size());
}

// ---------------------------------------------------------------------------

InfoGapModel::InfoGapModel(const Mdp& mdp, InfoGapParams params)
    : mdp_(&mdp), params_(params) {}

std::shared_ptr<const InfoGapModel::Entry> InfoGapModel::entry_for(const Policy& policy) {
  const std::vector<unsigned> key = policy.signature();
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  auto entry = std::make_shared<Entry>();
  entry->policy = policy;
  entry->sf = successor_features(*mdp_, policy);
  entry->universe = remove_redundant(bec_of_policy(*mdp_, policy, entry->sf));
  if (!entry->universe.empty()) {
    Rng rng(params_.seed);
    const CandidatePool pool = generate_candidates(*mdp_, policy, entry->sf, entry->universe,
                                                   params_.scot.rollouts_per_start,
                                                   params_.scot.horizon, rng);
    // Rollouts may miss one side of a tie; teach what the pool can cover.
    for (std::size_t t : greedy_cover_partial(entry->universe.size(), pool)) {
      entry->teaching.push_back(pool.trajectories[t]);
    }
  }
  std::lock_guard lock(mutex_);
  ++misses_;
  auto [it, inserted] = cache_.emplace(key, std::move(entry));
  return it->second;
}

std::shared_ptr<const InfoGapModel::Entry> InfoGapModel::find_containing(std::span<const double> w) const {
  std::lock_guard lock(mutex_);
  for (const auto& [key, entry] : cache_) {
    if (!entry->universe.empty() && contains(entry->universe, w)) return entry;
  }
  return nullptr;
}

std::size_t InfoGapModel::cache_size() const {
  std::lock_guard lock(mutex_);
  return cache_.size();
}

std::size_t InfoGapModel::misses() const {
  std::lock_guard lock(mutex_);
  return misses_;
}

double InfoGapModel::gap_for(std::span<const Demonstration> demos, const Entry& entry) const {
  if (entry.universe.empty()) return 0.0;
  const HalfSpaceSet demo_cone = bec_of_demos(*mdp_, entry.policy, entry.sf, demos, false);
  const std::size_t m = std::min(demos.size(), entry.teaching.size());
  const HalfSpaceSet opt_cone =
      bec_of_demos(*mdp_, entry.policy, entry.sf, std::span(entry.teaching.data(), m), false);
  const double info_demo = ang_sim_match(demo_cone, entry.universe);
  const double info_opt = ang_sim_match(opt_cone, entry.universe);
  return std::fabs(info_demo - info_opt);
}

double InfoGapModel::info_gap(std::span<const Demonstration> demos, const Policy& policy) {
  return gap_for(demos, *entry_for(policy));
}

double InfoGapModel::info_gap(std::span<const Demonstration> demos, std::span<const double> w) {
  return info_gap(demos, solve_optimal(*mdp_, w).policy);
}

double info_gap(std::span<const Demonstration> demos, std::span<const double> w, const Mdp& mdp,
                const InfoGapParams& params) {
  InfoGapModel model(mdp, params);
  return model.info_gap(demos, w);
}

double bio_log_likelihood(std::span<const Demonstration> demos, std::span<const double> w,
                          double alpha, double lambda, InfoGapModel& model) {
  if (!(lambda >= 0.0)) throw Error(ErrorCode::invalid_input, "lambda must be non-negative");
  const OptimalSolution sol = solve_optimal(model.mdp(), w);
  const double ll = log_likelihood(demos, sol.value, alpha);
  if (lambda == 0.0) return ll;
  return ll - lambda * model.info_gap(demos, sol.policy);
}

double bio_log_likelihood(std::span<const Demonstration> demos, std::span<const double> w,
                          double alpha, double lambda, const Mdp& mdp, const InfoGapParams& params) {
  InfoGapModel model(mdp, params);
  return bio_log_likelihood(demos, w, alpha, lambda, model);
}

LikelihoodFn bio_likelihood(std::span<const Demonstration> demos, double alpha, double lambda,
                            InfoGapModel& model) {
  if (!(lambda >= 0.0)) throw Error(ErrorCode::invalid_input, "lambda must be non-negative");
  return [demos, alpha, lambda, &model](std::span<const double>, const OptimalSolution& sol) {
    const double ll = log_likelihood(demos, sol.value, alpha);
    if (lambda == 0.0) return ll;
    return ll - lambda * model.info_gap(demos, sol.policy);
  };
}

}  // namespace mtirl
