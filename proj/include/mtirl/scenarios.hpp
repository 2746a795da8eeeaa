#pragma once

// Environments used by the tests, the acceptance suite and the CLI.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mtirl/bec.hpp"
#include "mtirl/mdp.hpp"

namespace mtirl {

enum GridAction : int { kUp = 0, kDown = 1, kLeft = 2, kRight = 3 };

/// Deterministic 4-action grid with boundary self-transitions. Cells are
/// numbered row-major from the top-left; terminal cells self-loop.
Mdp make_grid(int width, int height, int num_features, std::vector<double> features,
              std::vector<double> weights, double discount, std::vector<int> start_states,
              std::vector<int> terminals);

struct GridConfig {
  int width = 9;
  int height = 9;
  int features = 8;
  double discount = 0.95;
};

/// Random grid: one-hot feature per cell, one terminal cell, w ~ U[-1, 1]^k,
/// every cell a start state.
Mdp gen_gridworld(const GridConfig& config, std::uint64_t seed);

/// The 2x3 example grid: cell 0 is terminal, cell 1 is grey, features
/// (white, grey), gamma = 0.9, every cell a start state.
Mdp example_grid(std::span<const double> w);

/// Ball sorting on a 6x6 table: the four corners are terminal bins, features
/// are (bin0, bin1, bin2, bin3, table), gamma = 0.95, w ~ U[-1, 1]^5.
Mdp scenario_ballsort(std::uint64_t seed);

struct ChainScenario {
  Mdp mdp;
  std::vector<Demonstration> demos;
  /// Rewards inducing the consistent policies A, B and C, in that order.
  std::vector<std::vector<double>> candidate_rewards;
  std::vector<std::string> candidate_names;
};

/// Chain with features (orange, white, black): orange and black terminal ends,
/// white interior, actions (left, right), and one left-moving demonstration.
ChainScenario scenario_chain(int length = 7);

/// 3x3 grid with (white, red, gray, goal) features where the top-left start
/// has two optimal first moves, one through red and one through gray.
Mdp zero_volume_grid();

}  // namespace mtirl
