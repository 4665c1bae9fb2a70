#include "swarm/control/actor_critic_agent.hpp"

#include "swarm/core/error.hpp"
#include "swarm/learn/losses.hpp"
#include "swarm/learn/optimizer.hpp"

namespace swarm {

ActorCriticAgent::ActorCriticAgent(ActorCriticAgentConfig config, std::shared_ptr<Observable> observable,
                                   std::shared_ptr<Task> task, std::shared_ptr<learn::ActorCriticNet> network,
                                   std::shared_ptr<learn::RandomNetworkDistillation> intrinsic)
    : config_(std::move(config)),
      observable_(std::move(observable)),
      task_(std::move(task)),
      network_(std::move(network)),
      intrinsic_(std::move(intrinsic)),
      policy_rng_(config_.seed, stream_key(static_cast<std::uint64_t>(config_.species), StreamPurpose::policy)),
      exploration_rng_(config_.seed,
                       stream_key(static_cast<std::uint64_t>(config_.species), StreamPurpose::exploration)) {
  if (config_.actions.empty()) throw Error("actor-critic agent needs a non-empty action dictionary");
  if (!observable_ || !task_ || !network_) throw Error("actor-critic agent needs observable, task and network");
  if (network_->n_actions() != static_cast<int>(config_.actions.size()))
    throw Error("network output width does not match the action dictionary");
  if (network_->input_width() != observable_->width())
    throw Error("network input width does not match the observable width");
  if (config_.exploration.episode_slices < 1) throw Error("exploration episode length must be positive");
}

double ActorCriticAgent::exploration_probability() const {
  const auto& e = config_.exploration;
  if (e.zeta0 <= 0.0) return 0.0;
  return learn::exploration_schedule(e.zeta0, e.decay, static_cast<double>(slices_decided_),
                                     static_cast<double>(e.episode_slices));
}

void ActorCriticAgent::close_pending(const std::vector<Colloid>& colloids, const Eigen::MatrixXd& obs) {
  const TaskOutput out = (*task_)(colloids, config_.species);
  if (!pending()) return;
  if (out.rewards.size() != buffer_.observables.back().rows())
    throw Error("task reward count does not match the species size");
  buffer_.rewards.push_back(out.rewards.size() ? aggregate_rewards(out.rewards, config_.reward_mode) : out.rewards);
  Eigen::VectorXd intrinsic = Eigen::VectorXd::Zero(out.rewards.size());
  if (intrinsic_ && obs.rows() > 0) {
    const Eigen::VectorXd raw = intrinsic_->prediction_error(obs);
    intrinsic = raw / intrinsic_->normalizer();
    intrinsic_->observe(raw);
  }
  buffer_.intrinsic_rewards.push_back(intrinsic);
}

AgentDecision ActorCriticAgent::decide(const std::vector<Colloid>& colloids, const std::vector<std::size_t>& members) {
  Eigen::MatrixXd obs;
  if (cached_obs_) {
    obs = std::move(*cached_obs_);
    cached_obs_.reset();
  } else {
    obs = observable_->compute(colloids, config_.species).values;
    close_pending(colloids, obs);
  }
  if (obs.rows() != static_cast<Eigen::Index>(members.size()))
    throw Error("observable row count does not match the species size");

  AgentDecision d;
  d.actions.assign(members.size(), Action{});
  d.indices.assign(members.size(), -1);
  if (task_->kill_switch()) {
    buffer_.final_observables = obs;
    return d;
  }

  const auto out = network_->forward(obs);
  const Eigen::MatrixXd log_probs = learn::log_softmax<double>(out.logits);
  const double zeta = exploration_probability();
  const auto n = static_cast<Eigen::Index>(members.size());
  Eigen::VectorXi chosen(n);
  Eigen::VectorXd lp(n);
  Eigen::Array<bool, Eigen::Dynamic, 1> explored(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const learn::SampledAction s = learn::sample_action(out.logits.row(r).transpose(), config_.sampler, policy_rng_);
    const ExplorationResult e = apply_exploration(s.index, zeta, network_->n_actions(), exploration_rng_);
    chosen[r] = e.index;
    explored[r] = e.replaced;
    lp[r] = log_probs(r, e.index);
    d.actions[r] = config_.actions[e.index].second;
    d.indices[r] = e.index;
  }
  buffer_.observables.push_back(obs);
  buffer_.actions.push_back(chosen);
  buffer_.log_probs.push_back(lp);
  buffer_.values.push_back(out.values);
  buffer_.explored.push_back(explored);
  ++slices_decided_;
  return d;
}

void ActorCriticAgent::finalize(const std::vector<Colloid>& colloids) {
  if (!pending()) return;
  Eigen::MatrixXd obs = observable_->compute(colloids, config_.species).values;
  close_pending(colloids, obs);
  buffer_.final_observables = obs;
  cached_obs_ = std::move(obs);
}

void ActorCriticAgent::reset(const std::vector<Colloid>& colloids) {
  observable_->reset();
  task_->reset(colloids);
  buffer_.clear();
  cached_obs_.reset();
}

void ActorCriticAgent::clear_buffer() { buffer_.clear(); }

}  // namespace swarm
