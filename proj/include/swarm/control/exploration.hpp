#pragma once

#include "swarm/core/rng.hpp"

namespace swarm {

struct ExplorationResult {
  int index = 0;
  bool replaced = false;
};

/// With probability zeta, replaces the policy's action by a uniformly drawn
/// index in [0, n_actions). Consumes two draws from `rng` when replacing and
/// one otherwise.
ExplorationResult apply_exploration(int policy_index, double zeta, int n_actions, RngStream& rng);

struct ExplorationConfig {
  double zeta0 = 0.0;
  double decay = 0.0;
  /// Slices per training episode (T of the decay law).
  int episode_slices = 1;

  bool operator==(const ExplorationConfig&) const = default;
};

}  // namespace swarm
