#pragma once

#include "swarm/core/types.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace swarm {

enum class AgentKind { actor_critic, classical };

std::string to_string(AgentKind k);

/// Actions for the members of one species, plus the chosen action indices
/// (-1 where the controller has no discrete action space).
struct AgentDecision {
  std::vector<Action> actions;
  std::vector<int> indices;
};

/// Controller for every particle of one species.
class Agent {
 public:
  virtual ~Agent() = default;

  virtual int species() const = 0;
  virtual AgentKind kind() const = 0;

  /// `members` indexes the colloids of this agent's species, in order.
  virtual AgentDecision decide(const std::vector<Colloid>& colloids,
                               const std::vector<std::size_t>& members) = 0;

  virtual bool kill_switch() const { return false; }
  /// Environment reset: clear observable/task history and episode buffers.
  virtual void reset(const std::vector<Colloid>&) {}
  /// Closes the running episode with the state after the last slice.
  virtual void finalize(const std::vector<Colloid>&) {}
  virtual bool trainable() const { return false; }
};

}  // namespace swarm
