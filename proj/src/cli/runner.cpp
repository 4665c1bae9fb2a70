#include "swarm/cli/runner.hpp"

#include "swarm/config/builder.hpp"

#include <fstream>
#include <set>

namespace swarm::cli {

std::filesystem::path output_directory(const config::ExperimentConfig& config,
                                       const std::optional<std::filesystem::path>& root) {
  const std::filesystem::path dir(config.output.directory);
  if (root && dir.is_relative()) return *root / dir;
  return dir;
}

RunReport run_experiment(config::ExperimentConfig config, const RunOptions& options) {
  if (options.seed) config.seed = *options.seed;
  RunReport report;
  report.directory = output_directory(config, options.output_root);
  std::filesystem::create_directories(report.directory);
  {
    std::ofstream out(report.directory / "config.toml");
    out << config::serialize_experiment(config);
  }

  config::AgentSet agents = config::build_agents(config, config.seed);
  const bool has_trainable = !agents.trainable.empty();
  TrainRun run;
  run.mode = config.training.mode == "continuous" ? TrainingMode::continuous : TrainingMode::episodic;
  run.n_episodes = config.training.n_episodes;
  run.episode_length = config.training.episode_length;
  run.reset_frequency = config.training.reset_frequency;
  run.seed = config.seed;
  run.checkpoint_every = config.output.checkpoint_every;
  Trainer trainer(agents.trainable, agents.others, agents.passive, run);
  for (const auto& a : config.agents)
    if (!a.load_checkpoint.empty()) trainer.load_checkpoint(a.species, a.load_checkpoint);

  std::optional<TrajectoryLog> trajectory;
  if (config.output.trajectory) {
    trajectory.emplace(report.directory / "trajectory.csv");
    trainer.set_trajectory_log(&*trajectory, config.output.trajectory_every);
  }
  RewardLog rewards(report.directory / "rewards.csv");
  trainer.set_reward_log(&rewards);
  if (has_trainable && config.training.mode != "simulate") trainer.set_checkpoint_directory(report.directory / "checkpoints");
  trainer.set_interrupt(options.interrupt);

  const EngineFactory factory = config::build_engine_factory(config);
  if (config.training.mode == "episodic") {
    report.result = trainer.episodic_training(factory);
  } else {
    std::unique_ptr<Engine> engine = factory(config.seed);
    report.result = config.training.mode == "continuous" ? trainer.continuous_training(*engine)
                                                         : trainer.simulate(*engine, config.training.slices);
  }

  rewards.complete();
  if (trajectory) {
    trajectory->complete();
    report.trajectory_rows = trajectory->rows();
  }
  return report;
}

ReplayStats replay_stats(const std::filesystem::path& trajectory) {
  ReplayStats stats;
  const std::vector<TrajectoryRow> rows = read_trajectory(trajectory, &stats.complete);
  stats.rows = rows.size();
  if (rows.empty()) return stats;
  std::map<std::int64_t, std::pair<Vec3, Vec3>> span;  // first, last position
  std::map<std::int64_t, int> type_of;
  std::set<double> times;
  stats.t_begin = rows.front().time;
  stats.t_end = rows.front().time;
  for (const auto& r : rows) {
    times.insert(r.time);
    stats.t_begin = std::min(stats.t_begin, r.time);
    stats.t_end = std::max(stats.t_end, r.time);
    auto it = span.find(r.id);
    if (it == span.end())
      span.emplace(r.id, std::make_pair(r.pos, r.pos));
    else
      it->second.second = r.pos;
    type_of[r.id] = r.type;
    if (r.action_index >= 0) ++stats.action_counts[r.action_index];
  }
  stats.frames = times.size();
  stats.particles = span.size();
  std::map<int, double> total;
  for (const auto& [id, ends] : span) {
    const int type = type_of[id];
    ++stats.particles_per_type[type];
    total[type] += (ends.second - ends.first).norm();
  }
  for (const auto& [type, sum] : total)
    stats.mean_displacement[type] = sum / static_cast<double>(stats.particles_per_type[type]);
  return stats;
}

void print_stats(std::ostream& out, const ReplayStats& s) {
  out << "rows: " << s.rows << '\n'
      << "frames: " << s.frames << '\n'
      << "particles: " << s.particles << '\n'
      << "time: " << format_double(s.t_begin) << " .. " << format_double(s.t_end) << '\n'
      << "complete: " << (s.complete ? "yes" : "no") << '\n';
  for (const auto& [type, n] : s.particles_per_type)
    out << "species " << type << ": " << n << " particles, mean displacement "
        << format_double(s.mean_displacement.at(type)) << '\n';
  for (const auto& [index, n] : s.action_counts) out << "action " << index << ": " << n << '\n';
}

}  // namespace swarm::cli
