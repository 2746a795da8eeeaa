#include "mtirl/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <ostream>
#include <set>
#include <thread>

#include "mtirl/bio_irl.hpp"
#include "mtirl/birl.hpp"
#include "mtirl/error.hpp"
#include "mtirl/scenarios.hpp"
#include "mtirl/scot.hpp"
#include "mtirl/uvm.hpp"

namespace mtirl {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

McmcConfig birl_config(const ExperimentConfig& c, std::uint64_t seed) {
  McmcConfig m;
  m.chain_length = c.chain_length;
  m.step_size = c.step_size;
  m.alpha = c.alpha;
  m.seed = seed;
  return m;
}

struct Teacher {
  std::vector<double> w;
  Policy policy;
  SuccessorFeatures sf;
};

Teacher solve_teacher(const Mdp& mdp) {
  Teacher t;
  t.w.assign(mdp.weights().begin(), mdp.weights().end());
  t.policy = solve_optimal(mdp, t.w).policy;
  t.sf = successor_features(mdp, t.policy);
  return t;
}

TeachingRow evaluate_row(const Mdp& mdp, const Teacher& teacher, std::string algorithm,
                         std::uint64_t seed, std::span<const Demonstration> demos, double seconds,
                         const McmcConfig& birl) {
  TeachingRow row;
  row.algorithm = std::move(algorithm);
  row.seed = seed;
  row.pairs = pair_count(demos);
  row.trajectories = demos.size();
  row.seconds = seconds;
  const McmcResult fit = mcmc_map(mdp, demos, birl);
  const LearnerEvaluation ev =
      evaluate_reward(mdp, teacher.w, teacher.policy, teacher.sf, fit.map_weights);
  row.policy_loss = ev.policy_loss;
  row.pct_incorrect = ev.pct_incorrect;
  return row;
}

void append_curve(std::vector<CurveRow>& rows, const std::string& name, std::uint64_t seed,
                  const LossCurve& curve) {
  for (std::size_t i = 0; i < curve.policy_loss.size(); ++i) {
    rows.push_back({name, seed, static_cast<int>(i + 1), curve.policy_loss[i], curve.pct_incorrect[i]});
  }
}

}  // namespace

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                    : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::uint64_t replicate_seed(const ExperimentConfig& config, int replicate) {
  return derive_seed(config.seed, static_cast<std::uint64_t>(replicate));
}

std::vector<TeachingSummary> summarize(std::span<const TeachingRow> rows) {
  std::vector<TeachingSummary> out;
  for (const TeachingRow& r : rows) {
    auto it = std::find_if(out.begin(), out.end(), [&](const TeachingSummary& s) {
      return s.algorithm == r.algorithm && s.features == r.features;
    });
    if (it == out.end()) {
      out.push_back({r.algorithm, r.features});
      it = out.end() - 1;
    }
    ++it->count;
    it->pairs += static_cast<double>(r.pairs);
    it->trajectories += static_cast<double>(r.trajectories);
    it->policy_loss += r.policy_loss;
    it->pct_incorrect += r.pct_incorrect;
    it->seconds += r.seconds;
  }
  for (TeachingSummary& s : out) {
    s.pairs /= s.count;
    s.trajectories /= s.count;
    s.policy_loss /= s.count;
    s.pct_incorrect /= s.count;
    s.seconds /= s.count;
  }
  return out;
}

std::vector<TeachingRow> table1_replicate(const ExperimentConfig& config, std::uint64_t seed) {
  const Mdp mdp = gen_gridworld(config.grid(), seed);
  const Teacher teacher = solve_teacher(mdp);
  const McmcConfig birl = birl_config(config, derive_seed(seed, 100));
  std::vector<TeachingRow> rows;

  {
    UvmParams p;
    p.samples = config.uvm_samples;
    p.rollouts_per_start = config.m;
    p.horizon = config.horizon;
    Rng rng(derive_seed(seed, 1));
    const auto t0 = Clock::now();
    const UvmResult r = uvm_for_policy(mdp, teacher.policy, teacher.sf, p, rng);
    const double secs = seconds_since(t0);
    rows.push_back(evaluate_row(mdp, teacher, "UVM", seed, r.selection.demos, secs, birl));
  }
  for (const bool prune : {true, false}) {
    ScotParams p;
    p.rollouts_per_start = config.m;
    p.horizon = config.horizon;
    p.prune = prune;
    Rng rng(derive_seed(seed, 2));
    const auto t0 = Clock::now();
    const ScotResult r = scot_for_policy(mdp, teacher.policy, teacher.sf, p, rng);
    const double secs = seconds_since(t0);
    rows.push_back(evaluate_row(mdp, teacher, prune ? "SCOT" : "SCOT-no-prune", seed,
                                r.selection.demos, secs, birl));
  }
  {
    Rng rng(derive_seed(seed, 3));
    const std::vector<int> states = queryable_states(mdp);
    const auto t0 = Clock::now();
    std::vector<Demonstration> demos;
    std::set<std::pair<int, int>> seen;
    for (int i = 0; i < config.random_pairs && !states.empty(); ++i) {
      const int s = states[uniform_index(rng, states.size())];
      Demonstration d = rollout(mdp, teacher.policy, s, 1, rng, i);
      if (seen.insert(d.steps.front()).second) demos.push_back(std::move(d));
    }
    const double secs = seconds_since(t0);
    rows.push_back(evaluate_row(mdp, teacher, "Random", seed, demos, secs, birl));
  }
  return rows;
}

std::vector<TeachingRow> run_table1(const ExperimentConfig& config) {
  config.validate();
  std::vector<std::vector<TeachingRow>> per(static_cast<std::size_t>(config.replicates));
  parallel_for(per.size(), config.threads, [&](std::size_t r) {
    per[r] = table1_replicate(config, replicate_seed(config, static_cast<int>(r)));
  });
  std::vector<TeachingRow> rows;
  for (auto& v : per) rows.insert(rows.end(), v.begin(), v.end());
  return rows;
}

std::vector<TeachingRow> run_feature_sweep(const ExperimentConfig& config) {
  config.validate();
  const std::size_t nk = config.sweep_features.size();
  std::vector<std::vector<TeachingRow>> per(nk * static_cast<std::size_t>(config.replicates));
  parallel_for(per.size(), config.threads, [&](std::size_t job) {
    const int k = config.sweep_features[job / static_cast<std::size_t>(config.replicates)];
    const int r = static_cast<int>(job % static_cast<std::size_t>(config.replicates));
    const std::uint64_t seed = replicate_seed(config, r);
    GridConfig g = config.grid();
    g.features = k;
    const Mdp mdp = gen_gridworld(g, derive_seed(seed, static_cast<std::uint64_t>(k)));
    const OptimalSolution opt = solve_optimal(mdp, mdp.weights());
    std::vector<int> actions(static_cast<std::size_t>(mdp.num_states()));
    for (int s = 0; s < mdp.num_states(); ++s) actions[static_cast<std::size_t>(s)] = opt.policy.first_action(s);
    const Policy det = Policy::deterministic(mdp.num_actions(), actions);
    const SuccessorFeatures sf = successor_features(mdp, det);

    auto make_row = [&](std::string name, const DemonstrationSet& set, double secs) {
      TeachingRow row;
      row.algorithm = std::move(name);
      row.seed = seed;
      row.pairs = set.pairs();
      row.trajectories = set.trajectories();
      row.seconds = secs;
      row.features = k;
      row.evaluated = false;
      return row;
    };
    {
      ScotParams p;
      p.rollouts_per_start = config.m;
      p.horizon = config.horizon;
      Rng rng(derive_seed(seed, 2));
      const auto t0 = Clock::now();
      const ScotResult res = scot_for_policy(mdp, det, sf, p, rng);
      per[job].push_back(make_row("SCOT", res.selection, seconds_since(t0)));
    }
    {
      UvmParams p;
      p.samples = config.uvm_samples;
      p.rollouts_per_start = config.m;
      p.horizon = config.horizon;
      Rng rng(derive_seed(seed, 1));
      const auto t0 = Clock::now();
      const UvmResult res = uvm_for_policy(mdp, det, sf, p, rng);
      per[job].push_back(make_row("UVM", res.selection, seconds_since(t0)));
    }
  });
  std::vector<TeachingRow> rows;
  for (auto& v : per) rows.insert(rows.end(), v.begin(), v.end());
  return rows;
}

BallsortResult run_ballsort(const ExperimentConfig& config) {
  config.validate();
  const auto n = static_cast<std::size_t>(config.replicates);
  BallsortResult out;
  out.birl.resize(n);
  out.bio.resize(n);
  parallel_for(n, config.threads, [&](std::size_t r) {
    const std::uint64_t seed = replicate_seed(config, static_cast<int>(r));
    const Mdp mdp = scenario_ballsort(seed);
    const Teacher teacher = solve_teacher(mdp);
    ScotParams sp;
    sp.rollouts_per_start = 1;
    sp.horizon = config.trajectory_length;
    Rng rng(derive_seed(seed, 2));
    const std::vector<Demonstration> demos =
        scot_for_policy(mdp, teacher.policy, teacher.sf, sp, rng).selection.demos;

    // The learner models the teacher's SCOT run, seed included, so tied
    // rollouts resolve the same way for the true policy.
    InfoGapModel model(mdp, InfoGapParams{sp, derive_seed(seed, 2)});
    LossCurve& birl_curve = out.birl[r];
    LossCurve& bio_curve = out.bio[r];
    birl_curve.replicates = bio_curve.replicates = 1;
    for (std::size_t d = 1; d <= demos.size(); ++d) {
      const std::span<const Demonstration> prefix(demos.data(), d);
      const McmcConfig mc = birl_config(config, derive_seed(seed, 100 + d));
      const McmcResult plain = mcmc_map(mdp, prefix, mc);
      const McmcResult bio =
          mcmc_map(mdp, prefix, mc, bio_likelihood(prefix, config.alpha, config.lambda, model));
      for (auto [fit, curve] : {std::pair{&plain, &birl_curve}, std::pair{&bio, &bio_curve}}) {
        const LearnerEvaluation ev =
            evaluate_reward(mdp, teacher.w, teacher.policy, teacher.sf, fit->map_weights);
        curve->policy_loss.push_back(ev.policy_loss);
        curve->pct_incorrect.push_back(ev.pct_incorrect);
      }
    }
  });
  for (std::size_t r = 0; r < n; ++r) {
    const std::uint64_t seed = replicate_seed(config, static_cast<int>(r));
    append_curve(out.rows, "BIRL", seed, out.birl[r]);
    append_curve(out.rows, "BIO-IRL", seed, out.bio[r]);
  }
  return out;
}

ActiveBenchResult run_active_bench(const ExperimentConfig& config, StrategyKind strategy) {
  config.validate();
  const auto n = static_cast<std::size_t>(config.replicates);
  ActiveBenchResult out;
  out.curves.resize(n);
  parallel_for(n, config.threads, [&](std::size_t r) {
    const std::uint64_t seed = replicate_seed(config, static_cast<int>(r));
    const Mdp mdp = gen_gridworld(config.grid(), seed);
    ActiveParams p;
    p.n_queries = config.queries;
    p.trajectory_length = config.trajectory_length;
    p.birl = birl_config(config, derive_seed(seed, 100));
    Rng rng(derive_seed(seed, 4));
    out.curves[r] = run_active(mdp, QueryStrategy{strategy}, p, rng);
  });
  for (std::size_t r = 0; r < n; ++r) {
    append_curve(out.rows, std::string(to_string(strategy)),
                 replicate_seed(config, static_cast<int>(r)), out.curves[r]);
  }
  return out;
}

ChainReport run_chain_demo(const ExperimentConfig& config, std::span<const double> lambdas) {
  const ChainScenario chain = scenario_chain();
  ScotParams sp;
  sp.rollouts_per_start = 1;
  sp.horizon = chain.mdp.num_states();
  InfoGapModel model(chain.mdp, InfoGapParams{sp, config.seed});
  ChainReport rep;
  rep.names = chain.candidate_names;
  rep.lambdas.assign(lambdas.begin(), lambdas.end());
  for (const auto& w : chain.candidate_rewards) {
    rep.birl.push_back(log_likelihood(chain.demos, w, config.alpha, chain.mdp));
  }
  for (double lambda : lambdas) {
    std::vector<double> row;
    for (const auto& w : chain.candidate_rewards) {
      row.push_back(bio_log_likelihood(chain.demos, w, config.alpha, lambda, model));
    }
    rep.bio.push_back(std::move(row));
  }
  return rep;
}

ExperimentConfig feature_sweep_defaults() {
  ExperimentConfig c;
  c.width = 6;
  c.height = 6;
  c.horizon = 6;
  c.m = 1;
  c.uvm_samples = 1000000;
  c.replicates = 30;
  return c;
}

ExperimentConfig active_defaults() {
  ExperimentConfig c;
  c.width = 10;
  c.height = 10;
  c.features = 10;
  c.replicates = 30;
  c.queries = 20;
  c.trajectory_length = 20;
  return c;
}

ExperimentConfig ballsort_defaults() {
  ExperimentConfig c;
  c.width = 6;
  c.height = 6;
  c.features = 5;
  c.chain_length = 1000;
  c.step_size = 0.05;
  c.lambda = 100.0;
  c.replicates = 50;
  c.trajectory_length = 10;
  return c;
}

void write_teaching_csv(std::ostream& out, std::span<const TeachingRow> rows, bool with_features) {
  out << "algorithm,seed,pairs,trajectories,policy_loss,pct_incorrect,seconds";
  if (with_features) out << ",features";
  out << '\n';
  for (const TeachingRow& r : rows) {
    out << r.algorithm << ',' << r.seed << ',' << r.pairs << ',' << r.trajectories << ',';
    if (r.evaluated) out << r.policy_loss << ',' << r.pct_incorrect;
    else out << ',';
    out << ',' << r.seconds;
    if (with_features) out << ',' << r.features;
    out << '\n';
  }
}

void write_curve_csv(std::ostream& out, std::span<const CurveRow> rows) {
  out << "algorithm,seed,index,policy_loss,pct_incorrect\n";
  for (const CurveRow& r : rows) {
    out << r.algorithm << ',' << r.seed << ',' << r.index << ',' << r.policy_loss << ','
        << r.pct_incorrect << '\n';
  }
}

}  // namespace mtirl
