#pragma once

#include "swarm/core/types.hpp"
#include "swarm/sensing/field.hpp"

#include <Eigen/Core>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace swarm {

struct TaskOutput {
  Eigen::VectorXd rewards;
  bool kill = false;
};

/// Reward producer for one species plus the run's kill switch.
///
/// Large positive rewards mean the task is being achieved. The kill flag
/// latches: once raised it stays raised until `reset`.
class Task {
 public:
  virtual ~Task() = default;

  /// Rewards for every particle of `species`, in colloid order.
  TaskOutput operator()(const std::vector<Colloid>& colloids, int species);

  bool kill_switch() const { return kill_; }

  /// Clears the latch and any history. `colloids` is the fresh state.
  void reset(const std::vector<Colloid>& colloids);

 protected:
  virtual TaskOutput evaluate(const std::vector<Colloid>& colloids, int species) = 0;
  virtual void on_reset(const std::vector<Colloid>&) {}

 private:
  bool kill_ = false;
};

/// Rewards the rotation of a rod made of `rod_type` particles.
/// reward = scale * sense * (signed angle the rod's principal axis turned
/// about +z since the previous call); 0 on the first call.
class RotateRodTask : public Task {
 public:
  RotateRodTask(int rod_type, double scale, Vec3 box, Boundary boundary, int dim, double sense = 1.0);
  /// Also validates that the rod species is present.
  RotateRodTask(int rod_type, double scale, Vec3 box, Boundary boundary, int dim,
                const std::vector<Colloid>& initial, double sense = 1.0);

  /// Principal axis of the rod particles (unit vector, sign arbitrary).
  Vec3 rod_axis(const std::vector<Colloid>& colloids) const;

 protected:
  TaskOutput evaluate(const std::vector<Colloid>& colloids, int species) override;
  void on_reset(const std::vector<Colloid>& colloids) override;

 private:
  int rod_type_;
  double scale_;
  Vec3 box_;
  Boundary boundary_;
  int dim_;
  double sense_;
  std::optional<Vec3> previous_axis_;
};

/// scale * max(0, c(r_t) - c(r_{t-1})) per particle, or the signed change
/// when `signed_change` is set. Never raises the kill switch.
class GradientTask : public Task {
 public:
  GradientTask(std::shared_ptr<const ConcentrationField> field, double scale, bool signed_change = false);

 protected:
  TaskOutput evaluate(const std::vector<Colloid>& colloids, int species) override;
  void on_reset(const std::vector<Colloid>& colloids) override;

 private:
  std::shared_ptr<const ConcentrationField> field_;
  double scale_;
  bool signed_change_;
  std::vector<std::pair<std::int64_t, double>> history_;
};

/// Weighted sum of sub-task rewards; kill is the OR of sub-task kills.
class Multitasking : public Task {
 public:
  Multitasking(std::vector<std::shared_ptr<Task>> tasks, std::vector<double> weights);

 protected:
  TaskOutput evaluate(const std::vector<Colloid>& colloids, int species) override;
  void on_reset(const std::vector<Colloid>& colloids) override;

 private:
  std::vector<std::shared_ptr<Task>> tasks_;
  std::vector<double> weights_;
};

struct KillSwitchConfig {
  /// Kill once elapsed time exceeds this (disabled when <= 0).
  double max_time = 0.0;
  /// Safe region; any particle outside it triggers the kill.
  std::optional<Vec3> safe_lower;
  std::optional<Vec3> safe_upper;
  /// Kill once the species' mean field value exceeds this threshold.
  std::optional<double> success_threshold;
  std::shared_ptr<const ConcentrationField> field;
  int dim = 3;
};

/// True when any configured predicate holds.
bool kill_switch_condition(const std::vector<Colloid>& colloids, const KillSwitchConfig& config,
                           double elapsed_time, int species = -1);

/// Zero-reward task that raises the kill switch from a predicate. Elapsed
/// time advances by `slice_duration` per evaluation.
class KillSwitchTask : public Task {
 public:
  KillSwitchTask(KillSwitchConfig config, double slice_duration);

  double elapsed() const { return elapsed_; }

 protected:
  TaskOutput evaluate(const std::vector<Colloid>& colloids, int species) override;
  void on_reset(const std::vector<Colloid>& colloids) override;

 private:
  KillSwitchConfig config_;
  double slice_duration_;
  double elapsed_ = 0.0;
};

enum class RewardMode { individual, team_average };

std::string to_string(RewardMode m);
RewardMode reward_mode_from_string(const std::string& name);

/// individual: unchanged; team_average: every entry becomes the mean.
Eigen::VectorXd aggregate_rewards(const Eigen::VectorXd& rewards, RewardMode mode);

}  // namespace swarm
