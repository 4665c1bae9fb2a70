#pragma once

#include "swarm/control/agent.hpp"
#include "swarm/engine/engine.hpp"

#include <memory>
#include <vector>

namespace swarm {

/// Dispatches each species to its agent; passive species get the no-op.
class SwarmForceFunction : public ForceFunction {
 public:
  SwarmForceFunction(std::vector<std::shared_ptr<Agent>> agents, std::vector<int> passive_types = {});

  std::vector<Action> calc_action(const std::vector<Colloid>& colloids) override;
  bool kill_switch() const override;

  void reset(const std::vector<Colloid>& colloids);
  void finalize(const std::vector<Colloid>& colloids);

  /// Action index chosen for each colloid in the last call (-1 if none).
  const std::vector<int>& last_action_indices() const { return last_indices_; }
  const std::vector<std::shared_ptr<Agent>>& agents() const { return agents_; }

 private:
  std::vector<std::shared_ptr<Agent>> agents_;
  std::vector<int> passive_;
  std::vector<int> last_indices_;
};

}  // namespace swarm
