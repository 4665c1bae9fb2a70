#include "swarm/control/exploration.hpp"

#include <algorithm>

namespace swarm {

ExplorationResult apply_exploration(int policy_index, double zeta, int n_actions, RngStream& rng) {
  if (zeta <= 0.0) {
    rng.next_uniform();
    return {policy_index, false};
  }
  if (rng.next_uniform() >= zeta) return {policy_index, false};
  const int drawn = static_cast<int>(rng.next_uniform() * n_actions);
  return {std::min(drawn, n_actions - 1), true};
}

}  // namespace swarm
