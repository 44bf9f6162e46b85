#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "hetalloc/allocation.hpp"
#include "hetalloc/network.hpp"

namespace fixtures {

using hetalloc::GainTable;
using hetalloc::Network;
using hetalloc::ScenarioConfig;

// Gain callback receives (tx node, rx node, rb) with GainTable numbering:
// tx 0 = MBS, tx 1 + k = underlay k; rx 0..C-1 = MUEs, rx C + k = u_k.
using GainFn = std::function<double(int tx, int rx, int rb)>;

inline ScenarioConfig small_config(int C, int S, int D, int N, std::vector<double> powers) {
  ScenarioConfig c;
  c.num_mue = C;
  c.num_sbs = S;
  c.num_d2d = D;
  c.num_rb = N;
  c.power_levels = std::move(powers);
  return c;
}

inline Network hand_network(const ScenarioConfig& config, const GainFn& gain) {
  const int K = config.num_transmitters();
  GainTable g(config.num_mue, K, config.num_rb);
  for (int i = 0; i < 1 + K; ++i)
    for (int j = 0; j < config.num_mue + K; ++j)
      for (int n = 0; n < config.num_rb; ++n) g.at(i, j, n) = gain(i, j, n);
  hetalloc::Geometry geo;
  geo.mues.resize(static_cast<std::size_t>(config.num_mue));
  geo.transmitters.resize(static_cast<std::size_t>(K));
  geo.receivers.resize(static_cast<std::size_t>(K));
  return Network(config, geo, g);
}

inline hetalloc::Allocation alloc_of(int K, std::vector<std::pair<int, hetalloc::Resource>> entries) {
  hetalloc::Allocation a(K);
  for (auto [k, r] : entries) a.assign(k, r);
  return a;
}

// Largest single reference-user contribution over every (k, n, l).
inline double max_single_contribution(const Network& net) {
  double m = 0.0;
  for (int k = 0; k < net.num_transmitters(); ++k)
    for (int n = 0; n < net.num_rb(); ++n)
      for (int l = 0; l < net.num_levels(); ++l) m = std::max(m, net.interference_contribution(k, {n, l}));
  return m;
}

// Same drop with the budget set to `factor` times the largest single
// contribution. Gains do not depend on i_max, so the drop is unchanged.
inline Network with_loose_budget(ScenarioConfig config, double factor = 10.0) {
  const Network probe = hetalloc::build_topology(config);
  config.i_max = factor * max_single_contribution(probe);
  config.i_max_per_rb.clear();
  return hetalloc::build_topology(config);
}

}  // namespace fixtures
