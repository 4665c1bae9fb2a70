#pragma once

#include "swarm/control/actor_critic_agent.hpp"
#include "swarm/control/force_function.hpp"
#include "swarm/core/error.hpp"
#include "swarm/engine/engine.hpp"
#include "swarm/learn/optimizer.hpp"
#include "swarm/learn/update.hpp"
#include "swarm/orchestrate/persistence.hpp"

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace swarm {

enum class TrainingMode { continuous, episodic };

std::string to_string(TrainingMode m);
TrainingMode training_mode_from_string(const std::string& name);

struct TrainRun {
  TrainingMode mode = TrainingMode::episodic;
  int n_episodes = 1;
  /// Slices per episode (one update per episode).
  int episode_length = 1;
  /// Episodic mode: rebuild the environment every this many episodes
  /// (1 = fully episodic, > 1 = semi-episodic).
  int reset_frequency = 1;
  std::uint64_t seed = 0;
  /// Write checkpoints every this many episodes (0 = only at the end).
  int checkpoint_every = 0;

  void validate() const;
  bool operator==(const TrainRun&) const = default;
};

/// An engine failure annotated with the episode it happened in.
class TrainingError : public Error {
 public:
  TrainingError(int episode, const std::string& what)
      : Error("episode " + std::to_string(episode) + ": " + what), episode_(episode) {}
  int episode() const { return episode_; }

 private:
  int episode_;
};

struct TrainableSpecies {
  std::shared_ptr<ActorCriticAgent> agent;
  learn::UpdateConfig update;
  /// Train the agent's RND predictor on each episode's observables.
  bool train_intrinsic = true;
};

struct TrainingResult {
  /// One entry per completed episode and trainable species.
  std::vector<EpisodeSummary> history;
  int episodes_completed = 0;
  bool killed = false;
  /// Stopped early by the interrupt flag.
  bool interrupted = false;
  /// Episode indices before which a fresh environment was built.
  std::vector<int> builds;
  /// Network updates per trainable species (same order as construction).
  std::vector<long> updates;

  /// Mean cumulative reward across species, per episode.
  std::vector<double> episode_rewards() const;
};

/// Summarizes a closed buffer; rejects empty or misaligned buffers.
EpisodeSummary record_episode(const TrajectoryBuffer& buffer, const learn::UpdateDiagnostics& diagnostics,
                              int episode, int species);

using EngineFactory = std::function<std::unique_ptr<Engine>(std::uint64_t seed)>;

/// Runs the sense-act-update loop over one or more environments.
class Trainer {
 public:
  Trainer(std::vector<TrainableSpecies> trainable, std::vector<std::shared_ptr<Agent>> others,
          std::vector<int> passive_types, TrainRun run);

  /// Optional outputs; the trainer does not own them.
  void set_reward_log(RewardLog* log) { reward_log_ = log; }
  void set_trajectory_log(TrajectoryLog* log, int every = 1);
  void set_checkpoint_directory(std::filesystem::path dir) { checkpoint_dir_ = std::move(dir); }
  /// Polled between slices; a raised flag ends the run cleanly. An episode
  /// cut short this way is discarded without an update.
  void set_interrupt(const std::atomic<bool>* flag) { interrupt_ = flag; }
  /// Starts a species' network and optimizer from a checkpoint.
  void load_checkpoint(int species, const std::filesystem::path& path);

  /// Never resets the environment; a kill ends training.
  TrainingResult continuous_training(Engine& engine);
  /// Rebuilds the environment every reset_frequency episodes or after a kill.
  TrainingResult episodic_training(const EngineFactory& factory);
  /// One run of `n_slices` slices without policy updates. Trainable species
  /// still get an episode summary (episode 0).
  TrainingResult simulate(Engine& engine, int n_slices);

  SwarmForceFunction& force_function() { return force_function_; }
  const std::vector<learn::Optimizer>& optimizers() const { return optimizers_; }
  void write_checkpoints(long episode_tag) const;

 private:
  enum class EpisodeEnd { completed, killed, interrupted };
  EpisodeEnd run_episode(Engine& engine, int episode, int n_slices, bool update, TrainingResult& result);
  bool interrupted() const { return interrupt_ && interrupt_->load(); }

  std::vector<TrainableSpecies> trainable_;
  std::vector<learn::Optimizer> optimizers_;
  SwarmForceFunction force_function_;
  TrainRun run_;
  RewardLog* reward_log_ = nullptr;
  TrajectoryLog* trajectory_log_ = nullptr;
  int trajectory_every_ = 1;
  long slices_seen_ = 0;
  std::optional<std::filesystem::path> checkpoint_dir_;
  std::vector<long> updates_;
  const std::atomic<bool>* interrupt_ = nullptr;
};

/// Wraps a force function and logs the state seen at each queried slice.
class RecordingForceFunction : public ForceFunction {
 public:
  RecordingForceFunction(SwarmForceFunction& inner, const Engine& engine, TrajectoryLog* log, int every,
                         long* counter);

  std::vector<Action> calc_action(const std::vector<Colloid>& colloids) override;
  bool kill_switch() const override { return inner_.kill_switch(); }

 private:
  SwarmForceFunction& inner_;
  const Engine& engine_;
  TrajectoryLog* log_;
  int every_;
  long* counter_;
};

}  // namespace swarm
