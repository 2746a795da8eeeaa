#pragma once

// Experiment configuration in a flat "key = value" format. '#' starts a
// comment; blank lines are ignored; unknown keys are an error.
//
// Keys: width, height, features, discount, seed, replicates, threads, alpha,
// lambda, chain_length, step_size, uvm_samples, horizon, m, random_pairs,
// queries, trajectory_length, sweep_features (comma list).

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mtirl/scenarios.hpp"

namespace mtirl {

struct ExperimentConfig {
  int width = 9;
  int height = 9;
  int features = 8;
  double discount = 0.95;
  std::uint64_t seed = 1;
  int replicates = 20;
  int threads = 0;  // 0 = hardware concurrency
  double alpha = 100.0;
  double lambda = 100.0;
  int chain_length = 10000;
  double step_size = 0.005;
  std::size_t uvm_samples = 100000;
  int horizon = 1;
  int m = 3;
  int random_pairs = 20;
  int queries = 20;
  int trajectory_length = 20;
  std::vector<int> sweep_features = {2, 4, 6, 8};

  GridConfig grid() const { return {width, height, features, discount}; }
  /// Throws invalid_input on non-positive counts or discount outside [0, 1).
  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);
/// Every key, one per line, with values that parse back exactly.
std::string emit_config(const ExperimentConfig& config);

}  // namespace mtirl
