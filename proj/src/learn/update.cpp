#include "swarm/learn/update.hpp"

#include "swarm/core/error.hpp"
#include "swarm/learn/estimators.hpp"
#include "swarm/learn/losses.hpp"

#include <cmath>
#include <vector>

namespace swarm::learn {

void UpdateConfig::validate() const {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw Error("gamma must lie in [0, 1]");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw Error("lambda must lie in [0, 1]");
  if (!(clip > 0.0)) throw Error("clip must be positive");
  if (epochs < 1) throw Error("epochs must be at least 1");
  if (!(optimizer.learning_rate > 0.0)) throw Error("learning rate must be positive");
  if (!(value_coef >= 0.0) || !(entropy_coef >= 0.0) || !(intrinsic_beta >= 0.0))
    throw Error("loss coefficients must be non-negative");
}

PolicyBatch assemble_batch(const ActorCriticNet& network, const TrajectoryBuffer& buffer,
                           const UpdateConfig& config) {
  if (buffer.empty()) throw Error("update_policy: empty trajectory buffer");
  if (!buffer.aligned()) throw Error("update_policy: trajectory buffer is not aligned");
  const Eigen::Index T = static_cast<Eigen::Index>(buffer.size());
  const Eigen::Index N = buffer.agents();
  const Eigen::Index width = buffer.observables.front().cols();

  Eigen::VectorXd bootstrap = Eigen::VectorXd::Zero(N);
  if (config.bootstrap_truncated) {
    if (buffer.final_observables.rows() != N) throw Error("update_policy: missing final observables for bootstrap");
    bootstrap = network.forward(buffer.final_observables).values;
  }

  PolicyBatch batch;
  batch.observables.resize(T * N, width);
  batch.actions.resize(T * N);
  batch.log_probs.resize(T * N);
  batch.advantages.resize(T * N);
  batch.returns.resize(T * N);
  batch.explored.resize(T * N);

  for (Eigen::Index t = 0; t < T; ++t) {
    if (buffer.observables[t].rows() != N || buffer.observables[t].cols() != width)
      throw Error("update_policy: inconsistent observable shapes across slices");
    batch.observables.middleRows(t * N, N) = buffer.observables[t];
    batch.actions.segment(t * N, N) = buffer.actions[t];
    batch.log_probs.segment(t * N, N) = buffer.log_probs[t];
    batch.explored.segment(t * N, N) = buffer.explored[t];
  }

  for (Eigen::Index i = 0; i < N; ++i) {
    Eigen::VectorXd r(T), v(T);
    for (Eigen::Index t = 0; t < T; ++t) {
      r[t] = buffer.rewards[t][i] + config.intrinsic_beta * buffer.intrinsic_rewards[t][i];
      v[t] = buffer.values[t][i];
    }
    Eigen::VectorXd adv, target;
    if (config.returns == ReturnsKind::expected) {
      target = expected_returns<double>(r, config.gamma, bootstrap[i]);
      adv = advantages_expected<double>(target, v);
    } else {
      adv = advantages_gae<double>(r, v, config.gamma, config.lambda, bootstrap[i]);
      target = adv + v;
    }
    for (Eigen::Index t = 0; t < T; ++t) {
      batch.advantages[t * N + i] = adv[t];
      batch.returns[t * N + i] = target[t];
    }
  }
  if (config.normalize_advantages) batch.advantages = normalize_advantages<double>(batch.advantages);
  return batch;
}

namespace {

// Actor terms restricted to `keep` rows, scattered back to full batch size.
LossTerms<double> actor_terms(const ActorCriticNet::Output& out, const PolicyBatch& batch,
                              const std::vector<Eigen::Index>& keep, const UpdateConfig& config) {
  const Eigen::Index B = out.logits.rows();
  const Eigen::Index A = out.logits.cols();
  LossTerms<double> full = zero_terms<double>(B, A);
  if (keep.empty()) return full;
  const Eigen::Index K = static_cast<Eigen::Index>(keep.size());
  Eigen::MatrixXd logits(K, A);
  Eigen::VectorXi actions(K);
  Eigen::VectorXd adv(K), old(K);
  for (Eigen::Index k = 0; k < K; ++k) {
    logits.row(k) = out.logits.row(keep[k]);
    actions[k] = batch.actions[keep[k]];
    adv[k] = batch.advantages[keep[k]];
    old[k] = batch.log_probs[keep[k]];
  }
  LossTerms<double> part = config.algorithm == Algorithm::vpg
                               ? vpg_terms<double>(logits, actions, adv)
                               : ppo_terms<double>(logits, actions, old, adv, config.clip);
  part += entropy_terms<double>(logits, config.entropy_coef);
  full.value = part.value;
  for (Eigen::Index k = 0; k < K; ++k) full.d_logits.row(keep[k]) = part.d_logits.row(k);
  return full;
}

}  // namespace

UpdateDiagnostics update_policy(ActorCriticNet& network, Optimizer& optimizer,
                                const TrajectoryBuffer& buffer, const UpdateConfig& config) {
  config.validate();
  const PolicyBatch batch = assemble_batch(network, buffer, config);

  std::vector<Eigen::Index> keep;
  for (Eigen::Index b = 0; b < batch.actions.size(); ++b) {
    if (!(config.exclude_explored && batch.explored[b])) keep.push_back(b);
  }

  UpdateDiagnostics diag;
  diag.mean_return = batch.returns.mean();
  const int passes = config.algorithm == Algorithm::vpg ? 1 : config.epochs;
  for (int epoch = 0; epoch < passes; ++epoch) {
    double actor_value = 0.0, critic_value = 0.0;
    auto loss = [&](const ActorCriticNet::Output& out) {
      LossTerms<double> total = actor_terms(out, batch, keep, config);
      const LossTerms<double> critic = critic_terms<double>(out.values, batch.returns, out.logits.cols());
      actor_value = total.value;
      critic_value = critic.value;
      total += scaled(critic, config.value_coef);
      if (epoch == 0) diag.entropy = mean_entropy<double>(out.logits);
      return total;
    };
    const auto result = gradients(network, batch.observables, loss);
    if (epoch == 0) {
      diag.actor_loss = actor_value;
      diag.critic_loss = critic_value;
    }
    network.set_parameters(optimizer.step(network.parameters(), result.gradient));
  }
  if (!network.parameters().allFinite()) throw Error("update_policy: parameters became non-finite");
  return diag;
}

}  // namespace swarm::learn
