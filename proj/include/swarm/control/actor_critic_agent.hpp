#pragma once

#include "swarm/control/agent.hpp"
#include "swarm/control/exploration.hpp"
#include "swarm/control/trajectory_buffer.hpp"
#include "swarm/learn/network.hpp"
#include "swarm/learn/rnd.hpp"
#include "swarm/learn/sampling.hpp"
#include "swarm/objectives/task.hpp"
#include "swarm/sensing/observable.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace swarm {

using ActionDictionary = std::vector<std::pair<std::string, Action>>;

struct ActorCriticAgentConfig {
  int species = 0;
  ActionDictionary actions;
  learn::Sampler sampler = learn::Sampler::categorical;
  RewardMode reward_mode = RewardMode::individual;
  ExplorationConfig exploration;
  std::uint64_t seed = 0;
};

/// Trainable agent sharing one policy across all particles of its species.
///
/// Per slice: compute observables, evaluate the task on the current state
/// (which rewards the previous slice's actions), then sample new actions.
/// The trajectory buffer therefore closes slice t when slice t+1 starts or
/// when `finalize` is called.
class ActorCriticAgent : public Agent {
 public:
  ActorCriticAgent(ActorCriticAgentConfig config, std::shared_ptr<Observable> observable,
                   std::shared_ptr<Task> task, std::shared_ptr<learn::ActorCriticNet> network,
                   std::shared_ptr<learn::RandomNetworkDistillation> intrinsic = nullptr);

  int species() const override { return config_.species; }
  AgentKind kind() const override { return AgentKind::actor_critic; }
  AgentDecision decide(const std::vector<Colloid>& colloids, const std::vector<std::size_t>& members) override;
  bool kill_switch() const override { return task_->kill_switch(); }
  void reset(const std::vector<Colloid>& colloids) override;
  void finalize(const std::vector<Colloid>& colloids) override;
  bool trainable() const override { return true; }

  const TrajectoryBuffer& buffer() const { return buffer_; }
  TrajectoryBuffer& buffer() { return buffer_; }
  /// Drops the recorded episode (after an update).
  void clear_buffer();

  learn::ActorCriticNet& network() { return *network_; }
  const learn::ActorCriticNet& network() const { return *network_; }
  learn::RandomNetworkDistillation* intrinsic() { return intrinsic_.get(); }
  const ActorCriticAgentConfig& config() const { return config_; }
  /// Current exploration probability.
  double exploration_probability() const;
  long slices_decided() const { return slices_decided_; }

 private:
  bool pending() const { return buffer_.rewards.size() < buffer_.observables.size(); }
  /// Closes the pending slice with rewards from the current state.
  void close_pending(const std::vector<Colloid>& colloids, const Eigen::MatrixXd& obs);

  ActorCriticAgentConfig config_;
  std::shared_ptr<Observable> observable_;
  std::shared_ptr<Task> task_;
  std::shared_ptr<learn::ActorCriticNet> network_;
  std::shared_ptr<learn::RandomNetworkDistillation> intrinsic_;
  TrajectoryBuffer buffer_;
  RngStream policy_rng_;
  RngStream exploration_rng_;
  long slices_decided_ = 0;
  /// Observables computed by `finalize` for a state not yet acted upon.
  std::optional<Eigen::MatrixXd> cached_obs_;
};

}  // namespace swarm
