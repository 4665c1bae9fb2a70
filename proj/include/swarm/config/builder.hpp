#pragma once

#include "swarm/config/experiment.hpp"
#include "swarm/engine/local_engine.hpp"
#include "swarm/orchestrate/trainer.hpp"

#include <memory>
#include <vector>

namespace swarm::config {

/// Species in declaration order; ids are consecutive from 0.
std::vector<Colloid> initial_colloids(const ExperimentConfig& config, std::uint64_t seed);

std::unique_ptr<LocalEngine> build_local_engine(const ExperimentConfig& config, std::uint64_t seed);

/// Local engines, or connections to the configured remote environment.
EngineFactory build_engine_factory(const ExperimentConfig& config);

/// Field with the system's box, boundary and dimension filled in.
std::shared_ptr<const ConcentrationField> resolve_field(const ExperimentConfig& config, const std::string& name);

struct AgentSet {
  std::vector<TrainableSpecies> trainable;
  std::vector<std::shared_ptr<Agent>> others;
  /// Species without an agent.
  std::vector<int> passive;
};

/// Networks are initialized from `seed`, independent of episode seeds.
AgentSet build_agents(const ExperimentConfig& config, std::uint64_t seed);

}  // namespace swarm::config
