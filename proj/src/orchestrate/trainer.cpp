#include "swarm/orchestrate/trainer.hpp"

#include "swarm/core/rng.hpp"
#include "swarm/learn/checkpoint.hpp"

#include <map>

namespace swarm {

std::string to_string(TrainingMode m) { return m == TrainingMode::continuous ? "continuous" : "episodic"; }

TrainingMode training_mode_from_string(const std::string& name) {
  if (name == "continuous") return TrainingMode::continuous;
  if (name == "episodic") return TrainingMode::episodic;
  throw Error("unknown training mode '" + name + "'");
}

void TrainRun::validate() const {
  if (n_episodes < 0) throw Error("n_episodes must be non-negative");
  if (episode_length < 1) throw Error("episode_length must be at least 1");
  if (reset_frequency < 1) throw Error("reset_frequency must be at least 1");
  if (checkpoint_every < 0) throw Error("checkpoint_every must be non-negative");
}

std::vector<double> TrainingResult::episode_rewards() const {
  std::map<int, std::pair<double, int>> acc;
  for (const auto& s : history) {
    acc[s.episode].first += s.cum_reward;
    acc[s.episode].second += 1;
  }
  std::vector<double> out;
  for (const auto& [ep, v] : acc) out.push_back(v.first / v.second);
  return out;
}

EpisodeSummary record_episode(const TrajectoryBuffer& buffer, const learn::UpdateDiagnostics& diagnostics,
                              int episode, int species) {
  if (buffer.empty()) throw Error("record_episode: empty episode");
  if (!buffer.aligned()) throw Error("record_episode: misaligned buffers");
  const Eigen::Index n = buffer.agents();
  Eigen::VectorXd cumulative = Eigen::VectorXd::Zero(n);
  for (const auto& r : buffer.rewards) {
    if (r.size() != n) throw Error("record_episode: misaligned buffers");
    cumulative += r;
  }
  EpisodeSummary s;
  s.episode = episode;
  s.species = species;
  s.slices = static_cast<int>(buffer.size());
  s.cum_reward = n > 0 ? cumulative.mean() : 0.0;
  s.mean_reward = s.cum_reward / static_cast<double>(buffer.size());
  s.actor_loss = diagnostics.actor_loss;
  s.critic_loss = diagnostics.critic_loss;
  s.entropy = diagnostics.entropy;
  return s;
}

RecordingForceFunction::RecordingForceFunction(SwarmForceFunction& inner, const Engine& engine, TrajectoryLog* log,
                                               int every, long* counter)
    : inner_(inner), engine_(engine), log_(log), every_(every), counter_(counter) {}

std::vector<Action> RecordingForceFunction::calc_action(const std::vector<Colloid>& colloids) {
  std::vector<Action> actions = inner_.calc_action(colloids);
  if (log_ && !inner_.kill_switch()) {
    if (*counter_ % every_ == 0) log_->write_state(engine_.time(), colloids, inner_.last_action_indices());
    ++*counter_;
  }
  return actions;
}

namespace {

std::vector<std::shared_ptr<Agent>> all_agents(const std::vector<TrainableSpecies>& trainable,
                                               std::vector<std::shared_ptr<Agent>> others) {
  for (const auto& t : trainable) {
    if (!t.agent) throw Error("trainer: null trainable agent");
    others.push_back(t.agent);
  }
  return others;
}

}  // namespace

Trainer::Trainer(std::vector<TrainableSpecies> trainable, std::vector<std::shared_ptr<Agent>> others,
                 std::vector<int> passive_types, TrainRun run)
    : trainable_(std::move(trainable)),
      force_function_(all_agents(trainable_, std::move(others)), std::move(passive_types)),
      run_(run) {
  run_.validate();
  for (const auto& t : trainable_) {
    t.update.validate();
    optimizers_.emplace_back(t.update.optimizer, t.agent->network().parameter_count());
  }
  updates_.assign(trainable_.size(), 0);
}

void Trainer::set_trajectory_log(TrajectoryLog* log, int every) {
  if (every < 1) throw Error("trajectory cadence must be at least 1");
  trajectory_log_ = log;
  trajectory_every_ = every;
}

void Trainer::write_checkpoints(long episode_tag) const {
  (void)episode_tag;
  if (!checkpoint_dir_) return;
  std::filesystem::create_directories(*checkpoint_dir_);
  for (std::size_t k = 0; k < trainable_.size(); ++k) {
    const auto& agent = *trainable_[k].agent;
    learn::save_checkpoint(*checkpoint_dir_ / ("checkpoint_species_" + std::to_string(agent.species()) + ".json"),
                           agent.network(), optimizers_[k], updates_[k]);
  }
}

void Trainer::load_checkpoint(int species, const std::filesystem::path& path) {
  for (std::size_t k = 0; k < trainable_.size(); ++k) {
    if (trainable_[k].agent->species() != species) continue;
    updates_[k] = learn::load_checkpoint(path, trainable_[k].agent->network(), optimizers_[k]);
    return;
  }
  throw Error("no trainable species " + std::to_string(species) + " for checkpoint " + path.string());
}

Trainer::EpisodeEnd Trainer::run_episode(Engine& engine, int episode, int n_slices, bool update,
                                         TrainingResult& result) {
  RecordingForceFunction recorder(force_function_, engine, trajectory_log_, trajectory_every_, &slices_seen_);
  EpisodeEnd end = EpisodeEnd::completed;
  try {
    for (int s = 0; s < n_slices; ++s) {
      if (interrupted()) {
        end = EpisodeEnd::interrupted;
        break;
      }
      if (engine.integrate(1, recorder).terminated) {
        end = EpisodeEnd::killed;
        break;
      }
    }
    const std::vector<Colloid> final_state = engine.get_particle_data();
    force_function_.finalize(final_state);
    if (trajectory_log_) trajectory_log_->write_state(engine.time(), final_state, {});
  } catch (const TrainingError&) {
    throw;
  } catch (const std::exception& e) {
    throw TrainingError(episode, e.what());
  }
  if (end != EpisodeEnd::killed && force_function_.kill_switch()) end = EpisodeEnd::killed;

  if (end == EpisodeEnd::interrupted) {
    for (auto& t : trainable_) t.agent->clear_buffer();
    return end;
  }

  for (std::size_t k = 0; k < trainable_.size(); ++k) {
    auto& t = trainable_[k];
    ActorCriticAgent& agent = *t.agent;
    const TrajectoryBuffer& buffer = agent.buffer();
    EpisodeSummary summary;
    summary.episode = episode;
    summary.species = agent.species();
    if (!buffer.empty()) {
      learn::UpdateDiagnostics diag;
      if (update) {
        if (t.train_intrinsic && agent.intrinsic()) {
          Eigen::MatrixXd states(static_cast<Eigen::Index>(buffer.size()) * buffer.agents(),
                                 buffer.observables.front().cols());
          for (std::size_t s = 0; s < buffer.size(); ++s)
            states.middleRows(static_cast<Eigen::Index>(s) * buffer.agents(), buffer.agents()) = buffer.observables[s];
          agent.intrinsic()->train(states);
        }
        diag = learn::update_policy(agent.network(), optimizers_[k], buffer, t.update);
        ++updates_[k];
      }
      summary = record_episode(buffer, diag, episode, agent.species());
    }
    agent.clear_buffer();
    result.history.push_back(summary);
    if (reward_log_) reward_log_->write(summary);
  }
  ++result.episodes_completed;
  if (update && checkpoint_dir_ && run_.checkpoint_every > 0 && (episode + 1) % run_.checkpoint_every == 0)
    write_checkpoints(episode);
  return end;
}

TrainingResult Trainer::continuous_training(Engine& engine) {
  TrainingResult result;
  result.builds.push_back(0);
  force_function_.reset(engine.get_particle_data());
  for (int ep = 0; ep < run_.n_episodes; ++ep) {
    const EpisodeEnd end = run_episode(engine, ep, run_.episode_length, true, result);
    if (end == EpisodeEnd::killed) {
      result.killed = true;
      break;
    }
    if (end == EpisodeEnd::interrupted) {
      result.interrupted = true;
      break;
    }
  }
  result.updates = updates_;
  write_checkpoints(result.episodes_completed);
  return result;
}

TrainingResult Trainer::episodic_training(const EngineFactory& factory) {
  TrainingResult result;
  std::unique_ptr<Engine> engine;
  auto rebuild = [&](int ep) {
    engine.reset();
    try {
      engine = factory(derive_seed(run_.seed, static_cast<std::uint64_t>(ep)));
    } catch (const std::exception& e) {
      throw TrainingError(ep, std::string("environment factory failed: ") + e.what());
    }
    if (!engine) throw TrainingError(ep, "environment factory returned nothing");
    force_function_.reset(engine->get_particle_data());
    result.builds.push_back(ep);
  };
  bool need_rebuild = true;
  for (int ep = 0; ep < run_.n_episodes; ++ep) {
    if (need_rebuild) rebuild(ep);
    const EpisodeEnd end = run_episode(*engine, ep, run_.episode_length, true, result);
    if (end == EpisodeEnd::interrupted) {
      result.interrupted = true;
      break;
    }
    if (end == EpisodeEnd::killed) result.killed = true;
    need_rebuild = end == EpisodeEnd::killed || (ep + 1) % run_.reset_frequency == 0;
  }
  result.updates = updates_;
  write_checkpoints(result.episodes_completed);
  return result;
}

TrainingResult Trainer::simulate(Engine& engine, int n_slices) {
  if (n_slices < 1) throw Error("n_slices must be at least 1");
  TrainingResult result;
  result.builds.push_back(0);
  force_function_.reset(engine.get_particle_data());
  const EpisodeEnd end = run_episode(engine, 0, n_slices, false, result);
  result.killed = end == EpisodeEnd::killed;
  result.interrupted = end == EpisodeEnd::interrupted;
  result.updates = updates_;
  return result;
}

}  // namespace swarm
