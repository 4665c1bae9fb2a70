#pragma once

#include "swarm/config/toml.hpp"
#include "swarm/control/actor_critic_agent.hpp"
#include "swarm/control/lymburn.hpp"
#include "swarm/engine/interactions.hpp"
#include "swarm/learn/network.hpp"
#include "swarm/learn/update.hpp"
#include "swarm/objectives/task.hpp"
#include "swarm/sensing/field.hpp"
#include "swarm/sensing/observable.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace swarm::config {

struct SpeciesSpec {
  int type = 0;
  int count = 0;
  /// "random" (uniform in [lower, upper], default the whole box) or "rod".
  std::string placement = "random";
  std::optional<Vec3> lower;
  std::optional<Vec3> upper;
  Vec3 center = Vec3::Zero();
  double length = 1.0;
  double angle = 0.0;
  /// Moves as one rigid body.
  bool rigid = false;

  bool operator==(const SpeciesSpec&) const = default;
};

/// Named concentration field; box, boundary and dimension come from the system.
struct FieldSpec {
  std::string name;
  ConcentrationField field;

  bool operator==(const FieldSpec&) const = default;
};

struct ObservableSpec {
  std::string name;
  /// position_director | concentration_change | vision_cones
  std::string kind = "position_director";
  std::string field;
  double scale = 1.0;
  VisionConeConfig vision;
  /// Vision cone radius; a quarter of the smallest box edge when unset.
  std::optional<double> cone_radius;

  bool operator==(const ObservableSpec&) const = default;
};

struct TaskSpec {
  std::string name;
  /// gradient | rotate_rod | kill_switch
  std::string kind = "gradient";
  double weight = 1.0;
  std::string field;
  double scale = 1.0;
  bool signed_change = false;
  int rod_type = 0;
  double sense = 1.0;
  double max_time = 0.0;
  std::optional<Vec3> safe_lower;
  std::optional<Vec3> safe_upper;
  std::optional<double> success_threshold;

  bool operator==(const TaskSpec&) const = default;
};

struct AgentSpec {
  int species = 0;
  /// actor_critic | lymburn
  std::string kind = "actor_critic";
  ActionDictionary actions;
  std::vector<ObservableSpec> observables;
  std::vector<TaskSpec> tasks;
  std::vector<int> hidden = {12};
  learn::Architecture architecture = learn::Architecture::disjoint;
  learn::Sampler sampler = learn::Sampler::categorical;
  RewardMode reward_mode = RewardMode::individual;
  double zeta0 = 0.0;
  double decay = 0.0;
  bool intrinsic = false;
  std::vector<int> rnd_hidden = {32, 32};
  int rnd_embedding = 8;
  double rnd_learning_rate = 1e-3;
  /// Checkpoint to start from (empty = fresh network).
  std::string load_checkpoint;
  LymburnParams lymburn;

  bool operator==(const AgentSpec&) const = default;
};

struct TrainingSpec {
  /// simulate | continuous | episodic
  std::string mode = "simulate";
  int n_episodes = 1;
  int episode_length = 1;
  int reset_frequency = 1;
  /// Slices to integrate in simulate mode.
  int slices = 1;
  learn::UpdateConfig update;

  bool operator==(const TrainingSpec&) const = default;
};

struct EngineSpec {
  /// local | remote
  std::string kind = "local";
  std::string address = "127.0.0.1:7878";
  /// Seconds before a silent remote environment is declared unresponsive.
  double timeout = 30.0;

  bool operator==(const EngineSpec&) const = default;
};

struct OutputSpec {
  std::string directory = "output";
  bool trajectory = true;
  int trajectory_every = 1;
  int checkpoint_every = 0;

  bool operator==(const OutputSpec&) const = default;
};

struct ExperimentConfig {
  std::uint64_t seed = 0;
  SimParams params;
  InteractionConfig interactions;
  std::vector<SpeciesSpec> species;
  std::vector<FieldSpec> fields;
  std::vector<AgentSpec> agents;
  TrainingSpec training;
  EngineSpec engine;
  OutputSpec output;

  const FieldSpec* find_field(const std::string& name) const;
  const SpeciesSpec* find_species(int type) const;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Parses and validates; every failure is a ConfigError naming the line
/// or the field.
ExperimentConfig parse_experiment(const std::string& text);
ExperimentConfig load_experiment(const std::filesystem::path& path);

std::string serialize_experiment(const ExperimentConfig& config);

/// Value ranges and cross-references.
void validate_experiment(const ExperimentConfig& config);

}  // namespace swarm::config
