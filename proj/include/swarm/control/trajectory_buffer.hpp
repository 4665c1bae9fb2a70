#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <vector>

namespace swarm {

/// Per-species record of one episode. Each entry holds one time slice for
/// all agents of the species (rows/elements indexed by agent).
///
/// Rewards for slice t are produced by the state after the slice, so the
/// reward arrays lag by one until the episode is closed.
struct TrajectoryBuffer {
  std::vector<Eigen::MatrixXd> observables;
  std::vector<Eigen::VectorXi> actions;
  std::vector<Eigen::VectorXd> log_probs;
  std::vector<Eigen::VectorXd> values;
  std::vector<Eigen::VectorXd> rewards;
  std::vector<Eigen::VectorXd> intrinsic_rewards;
  std::vector<Eigen::Array<bool, Eigen::Dynamic, 1>> explored;
  /// Observables of the state after the last slice; used for truncation
  /// bootstrapping.
  Eigen::MatrixXd final_observables;

  std::size_t size() const { return observables.size(); }
  bool empty() const { return observables.empty(); }

  bool aligned() const {
    const std::size_t n = observables.size();
    return actions.size() == n && log_probs.size() == n && values.size() == n &&
           rewards.size() == n && intrinsic_rewards.size() == n && explored.size() == n;
  }

  Eigen::Index agents() const { return observables.empty() ? 0 : observables.front().rows(); }

  void clear() { *this = TrajectoryBuffer{}; }
};

}  // namespace swarm
