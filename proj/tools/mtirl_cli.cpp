// mtirl: command-line driver for the teaching and IRL experiments.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "mtirl/bio_irl.hpp"
#include "mtirl/birl.hpp"
#include "mtirl/error.hpp"
#include "mtirl/experiments.hpp"
#include "mtirl/kernels.hpp"
#include "mtirl/scenarios.hpp"
#include "mtirl/scot.hpp"
#include "mtirl/uvm.hpp"

namespace {

using namespace mtirl;

struct Globals {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> replicates;
  std::optional<int> threads;
  std::string out;
};

ExperimentConfig resolve(const Globals& g, ExperimentConfig base) {
  ExperimentConfig c = g.config_path.empty() ? base : load_config(g.config_path);
  if (g.seed) c.seed = *g.seed;
  if (g.replicates) c.replicates = *g.replicates;
  if (g.threads) c.threads = *g.threads;
  c.validate();
  return c;
}

// Writes CSV to --out when given, otherwise to stdout.
template <typename Fn>
void emit_csv(const Globals& g, Fn&& write) {
  if (g.out.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw Error(ErrorCode::invalid_input, "cannot write '" + g.out + "'");
  write(f);
  std::cerr << "wrote " << g.out << '\n';
}

void print_summary(std::span<const TeachingRow> rows) {
  std::fprintf(stderr, "%-14s %4s %5s %9s %9s %10s %11s\n", "algorithm", "k", "n", "pairs",
               "loss", "%wrong", "seconds");
  for (const TeachingSummary& s : summarize(rows)) {
    std::fprintf(stderr, "%-14s %4d %5d %9.3f %9.4f %10.3f %11.4f\n", s.algorithm.c_str(),
                 s.features, s.count, s.pairs, s.policy_loss, s.pct_incorrect, s.seconds);
  }
}

void print_demos(std::span<const Demonstration> demos) {
  for (const Demonstration& d : demos) {
    std::cout << "start " << d.start_state << ':';
    for (const auto& [s, a] : d.steps) std::cout << " (" << s << ',' << a << ')';
    std::cout << '\n';
  }
}

void print_weights(const char* label, std::span<const double> w) {
  std::cout << label;
  for (double x : w) std::cout << ' ' << x;
  std::cout << '\n';
}

struct Taught {
  Mdp mdp;
  std::vector<Demonstration> demos;
};

Taught grid_with_scot(const ExperimentConfig& c) {
  Mdp mdp = gen_gridworld(c.grid(), c.seed);
  ScotParams p;
  p.rollouts_per_start = c.m;
  p.horizon = c.horizon;
  Rng rng(derive_seed(c.seed, 2));
  auto demos = scot(mdp, mdp.weights(), p, rng).selection.demos;
  return {std::move(mdp), std::move(demos)};
}

void report_fit(const Mdp& mdp, const McmcResult& fit) {
  const OptimalSolution teacher = solve_optimal(mdp);
  const SuccessorFeatures sf = successor_features(mdp, teacher.policy);
  const LearnerEvaluation ev =
      evaluate_reward(mdp, mdp.weights(), teacher.policy, sf, fit.map_weights);
  print_weights("true w:", mdp.weights());
  print_weights("map w: ", fit.map_weights);
  std::cout << "acceptance " << fit.acceptance_rate << "\npolicy_loss " << ev.policy_loss
            << "\npct_incorrect " << ev.pct_incorrect << '\n';
}

McmcConfig mcmc_from(const ExperimentConfig& c) {
  McmcConfig m;
  m.chain_length = c.chain_length;
  m.step_size = c.step_size;
  m.alpha = c.alpha;
  m.seed = derive_seed(c.seed, 100);
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Machine teaching for inverse reinforcement learning"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config_path, "key = value configuration file")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "base seed");
  app.add_option("--out", g.out, "CSV output path (default: stdout)");
  app.add_option("--replicates", g.replicates, "number of replicates");
  app.add_option("--threads", g.threads, "worker threads (0 = all cores)");

  std::optional<int> horizon, m;
  bool no_prune = false;
  auto* scot_cmd = app.add_subcommand("scot", "set-cover teaching set for a random grid");
  scot_cmd->add_option("--horizon", horizon, "trajectory length");
  scot_cmd->add_option("--m", m, "rollouts per start state");
  scot_cmd->add_flag("--no-prune", no_prune, "keep redundant BEC constraints");

  std::optional<std::size_t> samples;
  auto* uvm_cmd = app.add_subcommand("uvm", "uncertainty-volume teaching set for a random grid");
  uvm_cmd->add_option("--samples", samples, "Monte Carlo samples");
  uvm_cmd->add_option("--horizon", horizon, "trajectory length");
  uvm_cmd->add_option("--m", m, "rollouts per start state");

  auto* birl_cmd = app.add_subcommand("birl", "BIRL MAP reward from SCOT demonstrations");

  std::optional<double> lambda;
  auto* bio_cmd = app.add_subcommand("bioirl", "BIO-IRL MAP reward from SCOT demonstrations");
  bio_cmd->add_option("--lambda", lambda, "informativeness weight");

  std::string strategy = "random";
  auto* active_cmd = app.add_subcommand("active-bench", "active IRL loss curves");
  active_cmd->add_option("--strategy", strategy, "query strategy")
      ->check(CLI::IsMember({"random", "max-entropy", "scot-oracle"}));

  auto* table1_cmd = app.add_subcommand("table1", "UVM / SCOT / random teaching comparison");
  auto* sweep_cmd = app.add_subcommand("feature-sweep", "teaching cost against feature count");
  auto* chain_cmd = app.add_subcommand("chain-demo", "BIRL vs BIO-IRL likelihoods on the chain");
  auto* ball_cmd = app.add_subcommand("ballsort", "ball-sorting learning curves");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*scot_cmd) {
      ExperimentConfig c = resolve(g, {});
      if (horizon) c.horizon = *horizon;
      if (m) c.m = *m;
      const Mdp mdp = gen_gridworld(c.grid(), c.seed);
      ScotParams p;
      p.rollouts_per_start = c.m;
      p.horizon = c.horizon;
      p.prune = !no_prune;
      Rng rng(derive_seed(c.seed, 2));
      const ScotResult r = scot(mdp, mdp.weights(), p, rng);
      std::cout << "universe " << r.universe.size() << " candidates " << r.candidates
                << " trajectories " << r.selection.trajectories() << " pairs "
                << r.selection.pairs() << '\n';
      print_demos(r.selection.demos);
    } else if (*uvm_cmd) {
      ExperimentConfig c = resolve(g, {});
      if (samples) c.uvm_samples = *samples;
      if (horizon) c.horizon = *horizon;
      if (m) c.m = *m;
      const Mdp mdp = gen_gridworld(c.grid(), c.seed);
      UvmParams p;
      p.samples = c.uvm_samples;
      p.rollouts_per_start = c.m;
      p.horizon = c.horizon;
      Rng rng(derive_seed(c.seed, 1));
      const UvmResult r = uvm(mdp, mdp.weights(), p, rng);
      std::cout << "isa " << kernels::isa_name(kernels::active_isa()) << " trajectories "
                << r.selection.trajectories() << " pairs " << r.selection.pairs() << '\n';
      for (std::size_t i = 0; i < r.volumes.size(); ++i) {
        std::cout << "G[" << i + 1 << "] = " << r.volumes[i] << '\n';
      }
      print_demos(r.selection.demos);
    } else if (*birl_cmd) {
      const ExperimentConfig c = resolve(g, {});
      const Taught t = grid_with_scot(c);
      report_fit(t.mdp, mcmc_map(t.mdp, t.demos, mcmc_from(c)));
    } else if (*bio_cmd) {
      ExperimentConfig c = resolve(g, {});
      if (lambda) c.lambda = *lambda;
      const Taught t = grid_with_scot(c);
      ScotParams p;
      p.rollouts_per_start = c.m;
      p.horizon = c.horizon;
      // Same seed as the teacher's SCOT run, so the model reproduces its set.
      InfoGapModel model(t.mdp, InfoGapParams{p, derive_seed(c.seed, 2)});
      report_fit(t.mdp, mcmc_map(t.mdp, t.demos, mcmc_from(c),
                                 bio_likelihood(t.demos, c.alpha, c.lambda, model)));
    } else if (*active_cmd) {
      const ExperimentConfig c = resolve(g, active_defaults());
      const ActiveBenchResult r = run_active_bench(c, parse_strategy(strategy));
      const LossCurve mean = mean_curve(r.curves);
      for (std::size_t i = 0; i < mean.policy_loss.size(); ++i) {
        std::fprintf(stderr, "query %2zu  loss %.5f  %%wrong %.3f\n", i + 1, mean.policy_loss[i],
                     mean.pct_incorrect[i]);
      }
      emit_csv(g, [&](std::ostream& o) { write_curve_csv(o, r.rows); });
    } else if (*table1_cmd) {
      const ExperimentConfig c = resolve(g, {});
      const auto rows = run_table1(c);
      print_summary(rows);
      emit_csv(g, [&](std::ostream& o) { write_teaching_csv(o, rows, false); });
    } else if (*sweep_cmd) {
      const ExperimentConfig c = resolve(g, feature_sweep_defaults());
      const auto rows = run_feature_sweep(c);
      print_summary(rows);
      emit_csv(g, [&](std::ostream& o) { write_teaching_csv(o, rows, true); });
    } else if (*chain_cmd) {
      const ExperimentConfig c = resolve(g, {});
      const double lambdas[] = {0.0, 1.0, 10.0};
      const ChainReport rep = run_chain_demo(c, lambdas);
      std::printf("%-8s %14s", "policy", "BIRL");
      for (double l : rep.lambdas) {
        char head[32];
        std::snprintf(head, sizeof head, "BIO l=%g", l);
        std::printf(" %13s", head);
      }
      std::printf("\n");
      for (std::size_t i = 0; i < rep.names.size(); ++i) {
        std::printf("%-8s %14.6g", rep.names[i].c_str(), rep.birl[i]);
        for (const auto& row : rep.bio) std::printf(" %13.6g", row[i]);
        std::printf("\n");
      }
    } else if (*ball_cmd) {
      const ExperimentConfig c = resolve(g, ballsort_defaults());
      const BallsortResult r = run_ballsort(c);
      const LossCurve birl = mean_curve(r.birl);
      const LossCurve bio = mean_curve(r.bio);
      for (std::size_t i = 0; i < birl.pct_incorrect.size(); ++i) {
        std::fprintf(stderr, "demos %2zu  BIRL %%wrong %7.3f  BIO-IRL %%wrong %7.3f\n", i + 1,
                     birl.pct_incorrect[i], bio.pct_incorrect[i]);
      }
      emit_csv(g, [&](std::ostream& o) { write_curve_csv(o, r.rows); });
    }
  } catch (const std::exception& e) {
    std::cerr << "mtirl: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
