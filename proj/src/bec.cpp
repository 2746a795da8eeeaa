#include "mtirl/bec.hpp"

#include <cmath>
#include <string>

#include "mtirl/error.hpp"
#include "mtirl/lp.hpp"

namespace mtirl {
namespace {

double norm2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void add_differences(const SuccessorFeatures& sf, int s, int a, HalfSpaceSet& out,
                     std::vector<double>& diff) {
  const auto mu_a = sf.state_action(s, a);
  for (int b = 0; b < sf.num_actions(); ++b) {
    if (b == a) continue;
    const auto mu_b = sf.state_action(s, b);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = mu_a[i] - mu_b[i];
    out.add(diff);
  }
}

}  // namespace

bool HalfSpaceSet::add(std::span<const double> raw) {
  if (raw.size() != dim_) throw Error(ErrorCode::dimension_mismatch, "half-space normal dimension");
  const double len = norm2(raw);
  if (!(len >= kZeroNormal)) return false;
  std::vector<double> unit(raw.begin(), raw.end());
  for (double& x : unit) x /= len;
  return add_unit(unit);
}

bool HalfSpaceSet::add_unit(std::span<const double> unit) {
  if (unit.size() != dim_) throw Error(ErrorCode::dimension_mismatch, "half-space normal dimension");
  if (find(unit) != size()) return false;
  data_.insert(data_.end(), unit.begin(), unit.end());
  return true;
}

void HalfSpaceSet::append(const HalfSpaceSet& other) {
  if (other.dim_ != dim_) throw Error(ErrorCode::dimension_mismatch, "half-space set dimension");
  for (std::size_t i = 0; i < other.size(); ++i) add_unit(other.normal(i));
}

std::size_t HalfSpaceSet::find(std::span<const double> unit) const {
  const std::size_t count = size();
  constexpr double limit = kDuplicateDistance * kDuplicateDistance;
  for (std::size_t i = 0; i < count; ++i) {
    const double* n = data_.data() + i * dim_;
    double d2 = 0.0;
    for (std::size_t j = 0; j < dim_ && d2 < limit; ++j) {
      const double d = n[j] - unit[j];
      d2 += d * d;
    }
    if (d2 < limit) return i;
  }
  return count;
}

HalfSpaceSet HalfSpaceSet::subset(std::span<const std::size_t> indices) const {
  HalfSpaceSet out(dim_);
  for (std::size_t i : indices) out.data_.insert(out.data_.end(), normal(i).begin(), normal(i).end());
  return out;
}

std::size_t pair_count(std::span<const Demonstration> demos) {
  std::size_t n = 0;
  for (const auto& d : demos) n += d.size();
  return n;
}

HalfSpaceSet bec_of_policy(const Mdp& mdp, const Policy& policy, const SuccessorFeatures& sf) {
  HalfSpaceSet out(static_cast<std::size_t>(mdp.num_features()));
  std::vector<double> diff(out.dim());
  for (int s = 0; s < mdp.num_states(); ++s) {
    for (int a = 0; a < mdp.num_actions(); ++a) {
      if (policy.is_support(s, a)) add_differences(sf, s, a, out, diff);
    }
  }
  return out;
}

HalfSpaceSet bec_of_demos(const Mdp& mdp, const Policy& policy, const SuccessorFeatures& sf,
                          std::span<const Demonstration> demos, bool strict) {
  HalfSpaceSet out(static_cast<std::size_t>(mdp.num_features()));
  std::vector<double> diff(out.dim());
  for (const Demonstration& demo : demos) {
    for (const auto& [s, a] : demo.steps) {
      if (s < 0 || s >= mdp.num_states() || a < 0 || a >= mdp.num_actions()) {
        throw Error(ErrorCode::invalid_input, "demonstrated pair out of range");
      }
      if (strict && !policy.is_support(s, a)) {
        throw Error(ErrorCode::suboptimal_demonstration,
                    "action " + std::to_string(a) + " is not optimal in state " + std::to_string(s));
      }
      add_differences(sf, s, a, out, diff);
    }
  }
  return out;
}

HalfSpaceSet remove_redundant(const HalfSpaceSet& hs) {
  const std::size_t dim = hs.dim();
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < hs.size(); ++i) kept.push_back(i);

  std::vector<double> others;
  std::vector<double> objective(dim);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    others.clear();
    for (std::size_t j : kept) {
      if (j == i) continue;
      const auto n = hs.normal(j);
      others.insert(others.end(), n.begin(), n.end());
    }
    const auto n = hs.normal(i);
    for (std::size_t c = 0; c < dim; ++c) objective[c] = -n[c];
    const lp::Result r = lp::maximize_in_box_cone(objective, others, dim);
    if (r.status != lp::Status::optimal) {
      throw Error(ErrorCode::numerical, "redundancy LP failed on constraint " + std::to_string(i));
    }
    if (r.objective <= kRedundancyTolerance) {
      kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(pos));
    } else {
      ++pos;
    }
  }
  return hs.subset(kept);
}

bool contains(const HalfSpaceSet& hs, std::span<const double> w) {
  if (w.size() != hs.dim()) throw Error(ErrorCode::dimension_mismatch, "contains: weight dimension");
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (dot(hs.normal(i), w) < -kContainsTolerance) return false;
  }
  return true;
}

bool same_membership(const HalfSpaceSet& a, const HalfSpaceSet& b, std::span<const double> samples) {
  const std::size_t dim = a.dim();
  for (std::size_t off = 0; off + dim <= samples.size(); off += dim) {
    const auto w = samples.subspan(off, dim);
    if (contains(a, w) != contains(b, w)) return false;
  }
  return true;
}

}  // namespace mtirl
