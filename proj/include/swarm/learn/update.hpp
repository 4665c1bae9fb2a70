#pragma once

#include "swarm/control/trajectory_buffer.hpp"
#include "swarm/learn/network.hpp"
#include "swarm/learn/optimizer.hpp"
#include "swarm/learn/sampling.hpp"

#include <string>

namespace swarm::learn {

enum class Algorithm { vpg, ppo };
enum class ReturnsKind { expected, gae };

std::string to_string(Algorithm a);
std::string to_string(ReturnsKind r);
Algorithm algorithm_from_string(const std::string& name);
ReturnsKind returns_from_string(const std::string& name);

struct UpdateConfig {
  Algorithm algorithm = Algorithm::ppo;
  ReturnsKind returns = ReturnsKind::expected;
  Sampler sampler = Sampler::categorical;
  double gamma = 0.99;
  double lambda = 0.95;
  double clip = 0.2;
  int epochs = 4;
  bool normalize_advantages = true;
  double entropy_coef = 0.0;
  double value_coef = 1.0;
  /// Bootstrap the final state with V(s_T) instead of 0 (truncated episodes).
  bool bootstrap_truncated = false;
  /// Weight of intrinsic rewards in r = r_ext + beta r_int.
  double intrinsic_beta = 1.0;
  /// Drop exploration-overridden decisions from the policy loss.
  bool exclude_explored = false;
  OptimizerConfig optimizer;

  void validate() const;
  bool operator==(const UpdateConfig&) const = default;
};

struct UpdateDiagnostics {
  double actor_loss = 0.0;
  double critic_loss = 0.0;
  double entropy = 0.0;
  double mean_return = 0.0;
};

/// Flattened training batch (slice-major, then agent).
struct PolicyBatch {
  Eigen::MatrixXd observables;
  Eigen::VectorXi actions;
  Eigen::VectorXd log_probs;
  Eigen::VectorXd advantages;
  Eigen::VectorXd returns;
  Eigen::Array<bool, Eigen::Dynamic, 1> explored;
};

/// Per-agent returns and advantages from a closed buffer.
PolicyBatch assemble_batch(const ActorCriticNet& network, const TrajectoryBuffer& buffer,
                           const UpdateConfig& config);

/// One policy/critic update from a closed episode buffer.
UpdateDiagnostics update_policy(ActorCriticNet& network, Optimizer& optimizer,
                                const TrajectoryBuffer& buffer, const UpdateConfig& config);

}  // namespace swarm::learn
