#include "mtirl/scenarios.hpp"

#include <algorithm>

#include "mtirl/error.hpp"
#include "mtirl/random.hpp"

namespace mtirl {

Mdp make_grid(int width, int height, int num_features, std::vector<double> features,
              std::vector<double> weights, double discount, std::vector<int> start_states,
              std::vector<int> terminals) {
  if (width < 1 || height < 1) throw Error(ErrorCode::invalid_input, "grid must be non-empty");
  const int n = width * height;
  std::vector<char> is_terminal(static_cast<std::size_t>(n), 0);
  for (int t : terminals) {
    if (t < 0 || t >= n) throw Error(ErrorCode::invalid_input, "terminal cell out of range");
    is_terminal[static_cast<std::size_t>(t)] = 1;
  }
  std::vector<std::vector<Transition>> transitions(static_cast<std::size_t>(n) * 4);
  for (int s = 0; s < n; ++s) {
    const int r = s / width;
    const int c = s % width;
    for (int a = 0; a < 4; ++a) {
      int next = s;
      if (!is_terminal[static_cast<std::size_t>(s)]) {
        if (a == kUp && r > 0) next = s - width;
        if (a == kDown && r + 1 < height) next = s + width;
        if (a == kLeft && c > 0) next = s - 1;
        if (a == kRight && c + 1 < width) next = s + 1;
      }
      transitions[static_cast<std::size_t>(s) * 4 + a] = {{next, 1.0}};
    }
  }
  return Mdp(n, 4, std::move(transitions), num_features, std::move(features), std::move(weights),
             discount, std::move(start_states), std::move(terminals));
}

Mdp gen_gridworld(const GridConfig& config, std::uint64_t seed) {
  if (config.features < 2) throw Error(ErrorCode::invalid_input, "gridworld needs k >= 2");
  Rng rng(seed);
  const int n = config.width * config.height;
  const int k = config.features;
  std::vector<double> features(static_cast<std::size_t>(n) * k, 0.0);
  for (int s = 0; s < n; ++s) {
    const auto f = static_cast<std::size_t>(uniform_index(rng, static_cast<std::uint64_t>(k)));
    features[static_cast<std::size_t>(s) * k + f] = 1.0;
  }
  const int terminal = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n)));
  std::vector<double> w(static_cast<std::size_t>(k));
  for (double& x : w) x = uniform(rng, -1.0, 1.0);
  std::vector<int> starts(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) starts[static_cast<std::size_t>(s)] = s;
  return make_grid(config.width, config.height, k, std::move(features), std::move(w),
                   config.discount, std::move(starts), {terminal});
}

Mdp example_grid(std::span<const double> w) {
  //  0(T) 1(grey) 2
  //  3    4       5
  std::vector<double> features = {1, 0, 0, 1, 1, 0, 1, 0, 1, 0, 1, 0};
  return make_grid(3, 2, 2, std::move(features), std::vector<double>(w.begin(), w.end()), 0.9,
                   {0, 1, 2, 3, 4, 5}, {0});
}

Mdp scenario_ballsort(std::uint64_t seed) {
  constexpr int kSide = 6;
  constexpr int kFeatures = 5;
  const std::vector<int> bins = {0, kSide - 1, kSide * (kSide - 1), kSide * kSide - 1};
  std::vector<double> features(static_cast<std::size_t>(kSide * kSide) * kFeatures, 0.0);
  for (int s = 0; s < kSide * kSide; ++s) {
    const auto it = std::find(bins.begin(), bins.end(), s);
    const auto f = it == bins.end() ? kFeatures - 1 : static_cast<int>(it - bins.begin());
    features[static_cast<std::size_t>(s) * kFeatures + f] = 1.0;
  }
  Rng rng(seed);
  std::vector<double> w(kFeatures);
  for (double& x : w) x = uniform(rng, -1.0, 1.0);
  std::vector<int> starts(kSide * kSide);
  for (int s = 0; s < kSide * kSide; ++s) starts[static_cast<std::size_t>(s)] = s;
  return make_grid(kSide, kSide, kFeatures, std::move(features), std::move(w), 0.95,
                   std::move(starts), bins);
}

ChainScenario scenario_chain(int length) {
  if (length < 5) throw Error(ErrorCode::invalid_input, "chain needs at least 5 states");
  const int n = length;
  std::vector<std::vector<Transition>> transitions(static_cast<std::size_t>(n) * 2);
  std::vector<double> features(static_cast<std::size_t>(n) * 3, 0.0);
  for (int s = 0; s < n; ++s) {
    const bool end = s == 0 || s == n - 1;
    transitions[static_cast<std::size_t>(s) * 2 + 0] = {{end ? s : s - 1, 1.0}};
    transitions[static_cast<std::size_t>(s) * 2 + 1] = {{end ? s : s + 1, 1.0}};
    const int f = s == 0 ? 0 : (s == n - 1 ? 2 : 1);
    features[static_cast<std::size_t>(s) * 3 + f] = 1.0;
  }
  std::vector<int> starts;
  for (int s = 1; s + 1 < n; ++s) starts.push_back(s);

  // The demonstration starts in the middle and walks into orange.
  const int start = (n - 1) / 2;
  Demonstration demo;
  demo.start_state = start;
  for (int s = start; s > 0; --s) demo.steps.emplace_back(s, 0);

  // A: orange barely ahead of black, so the demonstrated start is the last
  // state that still heads left. B and C push that boundary further right.
  const std::vector<double> w_a = {0.0, -1.0, -0.1};
  const std::vector<double> w_b = {0.0, -0.3, -1.0};
  const std::vector<double> w_c = {0.0, -0.1, -1.0};

  ChainScenario out{Mdp(n, 2, std::move(transitions), 3, std::move(features), w_a, 0.9,
                        std::move(starts), {0, n - 1}),
                    {std::move(demo)},
                    {w_a, w_b, w_c},
                    {"A", "B", "C"}};
  return out;
}

Mdp zero_volume_grid() {
  //  0(start) 1(red)   2
  //  3(gray)  4        5
  //  6        7        8(goal)
  constexpr int k = 4;
  std::vector<double> features(9 * k, 0.0);
  for (int s = 0; s < 9; ++s) {
    int f = 0;
    if (s == 1) f = 1;
    if (s == 3) f = 2;
    if (s == 8) f = 3;
    features[static_cast<std::size_t>(s) * k + f] = 1.0;
  }
  return make_grid(3, 3, k, std::move(features), {-0.1, -0.5, -0.5, 1.0}, 0.9,
                   {0, 1, 2, 3, 4, 5, 6, 7}, {8});
}

}  // namespace mtirl
