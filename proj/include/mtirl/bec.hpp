#pragma once

// Behavioral equivalence classes as cones {w : w.n >= 0 for all normals n}.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "mtirl/mdp.hpp"

namespace mtirl {

inline constexpr double kZeroNormal = 1e-9;
inline constexpr double kDuplicateDistance = 1e-6;
inline constexpr double kContainsTolerance = 1e-9;
inline constexpr double kRedundancyTolerance = 1e-9;

/// Unit normals of a cone in R^dim, kept in insertion order with
/// near-duplicates (distance < kDuplicateDistance) and zero vectors dropped.
class HalfSpaceSet {
 public:
  HalfSpaceSet() = default;
  explicit HalfSpaceSet(std::size_t dim) : dim_(dim) {}

  /// Normalizes `raw`; returns false if it was zero or a duplicate.
  bool add(std::span<const double> raw);
  /// Adds an already-unit normal (still deduplicated).
  bool add_unit(std::span<const double> unit);
  void append(const HalfSpaceSet& other);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : data_.size() / dim_; }
  bool empty() const { return data_.empty(); }
  std::span<const double> normal(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }
  /// Row-major size() x dim().
  std::span<const double> flat() const { return data_; }

  /// Index of a stored normal within kDuplicateDistance of `unit`, or size().
  std::size_t find(std::span<const double> unit) const;

  HalfSpaceSet subset(std::span<const std::size_t> indices) const;

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

/// A trajectory of (state, action) pairs.
struct Demonstration {
  std::vector<std::pair<int, int>> steps;
  int start_state = -1;
  int rollout_index = 0;

  std::size_t size() const { return steps.size(); }
  bool same_path(const Demonstration& other) const { return steps == other.steps; }
};

/// Total (s, a) pairs over a list of demonstrations.
std::size_t pair_count(std::span<const Demonstration> demos);

/// Normal of mu(s,a) - mu(s,b) for every supported a and every b.
HalfSpaceSet bec_of_policy(const Mdp& mdp, const Policy& policy, const SuccessorFeatures& sf);

/// Normals for the demonstrated pairs only. With `strict`, a demonstrated
/// action outside the policy's support raises suboptimal_demonstration.
HalfSpaceSet bec_of_demos(const Mdp& mdp, const Policy& policy, const SuccessorFeatures& sf,
                          std::span<const Demonstration> demos, bool strict = true);

/// Single pass in stored order: a normal is dropped when, given the normals
/// still kept and the box [-1, 1]^dim, w.n cannot go below -kRedundancyTolerance.
HalfSpaceSet remove_redundant(const HalfSpaceSet& hs);

/// True iff w.n >= -kContainsTolerance for every normal.
bool contains(const HalfSpaceSet& hs, std::span<const double> w);

/// Mutual containment on `samples` rows (row-major, dim columns).
bool same_membership(const HalfSpaceSet& a, const HalfSpaceSet& b, std::span<const double> samples);

}  // namespace mtirl
