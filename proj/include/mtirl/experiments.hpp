#pragma once

// Experiment drivers behind the CLI and the acceptance suite. Replicate r
// uses seed derive_seed(config.seed, r); rows come back in replicate order
// whatever the thread count.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mtirl/active.hpp"
#include "mtirl/config.hpp"

namespace mtirl {

/// Runs fn(0..count-1) on `threads` workers (0 = hardware concurrency).
/// The first exception thrown by any call is rethrown after all workers stop.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

std::uint64_t replicate_seed(const ExperimentConfig& config, int replicate);

struct TeachingRow {
  std::string algorithm;
  std::uint64_t seed = 0;
  std::size_t pairs = 0;
  std::size_t trajectories = 0;
  double policy_loss = 0.0;
  double pct_incorrect = 0.0;
  double seconds = 0.0;
  int features = 0;         // feature sweep only
  bool evaluated = true;    // false: no IRL run, loss columns left empty
};

struct TeachingSummary {
  std::string algorithm;
  int features = 0;
  int count = 0;
  double pairs = 0.0;
  double trajectories = 0.0;
  double policy_loss = 0.0;
  double pct_incorrect = 0.0;
  double seconds = 0.0;
};

/// Means per (algorithm, features) in first-appearance order.
std::vector<TeachingSummary> summarize(std::span<const TeachingRow> rows);

/// One replicate of the comparison: UVM, SCOT, SCOT-no-prune and Random on a
/// random grid, each taught set evaluated with BIRL. Seconds cover only the
/// teaching-set computation.
std::vector<TeachingRow> table1_replicate(const ExperimentConfig& config, std::uint64_t seed);
std::vector<TeachingRow> run_table1(const ExperimentConfig& config);

/// SCOT and UVM teaching-set size and runtime for each k in sweep_features,
/// with a deterministic teacher. No IRL evaluation.
std::vector<TeachingRow> run_feature_sweep(const ExperimentConfig& config);

struct CurveRow {
  std::string algorithm;
  std::uint64_t seed = 0;
  int index = 0;  // 1-based demonstration or query count
  double policy_loss = 0.0;
  double pct_incorrect = 0.0;
};

struct BallsortResult {
  std::vector<CurveRow> rows;
  std::vector<LossCurve> birl;  // one per replicate
  std::vector<LossCurve> bio;
};

/// SCOT demonstrations delivered one at a time; after each, BIRL and BIO-IRL
/// MAP rewards are evaluated with paired chain seeds.
BallsortResult run_ballsort(const ExperimentConfig& config);

struct ActiveBenchResult {
  std::vector<CurveRow> rows;
  std::vector<LossCurve> curves;  // one per replicate
};

ActiveBenchResult run_active_bench(const ExperimentConfig& config, StrategyKind strategy);

struct ChainReport {
  std::vector<std::string> names;
  std::vector<double> birl;       // log-likelihood per candidate
  std::vector<double> lambdas;
  std::vector<std::vector<double>> bio;  // [lambda][candidate]
};

ChainReport run_chain_demo(const ExperimentConfig& config, std::span<const double> lambdas);

/// Defaults for each experiment; fields not listed keep ExperimentConfig's defaults.
ExperimentConfig feature_sweep_defaults();  // 6x6, horizon 6, 1e6 UVM samples
ExperimentConfig active_defaults();         // 10x10, k = 10, length-20 answers
ExperimentConfig ballsort_defaults();       // chain 1000, step 0.05, lambda 100, 50 rewards

/// Header: algorithm,seed,pairs,trajectories,policy_loss,pct_incorrect,seconds
/// (plus a trailing features column when `with_features`).
void write_teaching_csv(std::ostream& out, std::span<const TeachingRow> rows, bool with_features);
/// Header: algorithm,seed,index,policy_loss,pct_incorrect
void write_curve_csv(std::ostream& out, std::span<const CurveRow> rows);

}  // namespace mtirl
