#pragma once

#include "swarm/config/experiment.hpp"
#include "swarm/orchestrate/trainer.hpp"

#include <atomic>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>

namespace swarm::cli {

/// Environment variable that relocates relative output directories.
inline constexpr const char* kOutputRootVariable = "SWARM_OUTPUT_ROOT";

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> output_root;
  const std::atomic<bool>* interrupt = nullptr;
};

struct RunReport {
  std::filesystem::path directory;
  TrainingResult result;
  std::size_t trajectory_rows = 0;
};

std::filesystem::path output_directory(const config::ExperimentConfig& config,
                                       const std::optional<std::filesystem::path>& root);

/// Writes trajectory.csv, rewards.csv, config.toml and checkpoints/ under
/// the output directory. Footers are written on completion or interrupt.
RunReport run_experiment(config::ExperimentConfig config, const RunOptions& options);

struct ReplayStats {
  std::size_t rows = 0;
  std::size_t frames = 0;
  std::size_t particles = 0;
  bool complete = false;
  double t_begin = 0.0;
  double t_end = 0.0;
  std::map<int, std::size_t> particles_per_type;
  /// Mean net displacement per particle between first and last frame.
  std::map<int, double> mean_displacement;
  /// How often each action index was chosen, over all rows.
  std::map<int, std::size_t> action_counts;
};

ReplayStats replay_stats(const std::filesystem::path& trajectory);
void print_stats(std::ostream& out, const ReplayStats& stats);

}  // namespace swarm::cli
