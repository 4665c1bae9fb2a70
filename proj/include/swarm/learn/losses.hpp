#pragma once

#include "swarm/core/error.hpp"
#include "swarm/learn/mlp.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>

namespace swarm::learn {

/// Row-wise log-softmax with max subtraction.
template <typename Scalar>
MatrixX<Scalar> log_softmax(const MatrixX<Scalar>& logits) {
  MatrixX<Scalar> out(logits.rows(), logits.cols());
  for (Eigen::Index r = 0; r < logits.rows(); ++r) {
    const Scalar m = logits.row(r).maxCoeff();
    const Scalar lse = m + std::log((logits.row(r).array() - m).exp().sum());
    out.row(r) = logits.row(r).array() - lse;
  }
  return out;
}

template <typename Scalar>
MatrixX<Scalar> softmax(const MatrixX<Scalar>& logits) {
  return log_softmax(logits).array().exp().matrix();
}

/// Policy-gradient surrogate: -mean(log pi * A). Descent on this is ascent
/// on the advantage-weighted log-likelihood objective.
template <typename Scalar>
Scalar vpg_loss(const VectorX<Scalar>& log_probs, const VectorX<Scalar>& advantages) {
  if (log_probs.size() != advantages.size()) throw Error("vpg_loss: length mismatch");
  if (log_probs.size() == 0) return Scalar(0);
  return -(log_probs.array() * advantages.array()).mean();
}

/// Clipped surrogate: -mean(min(rho A, clip(rho, 1-eps, 1+eps) A)).
template <typename Scalar>
Scalar ppo_loss(const VectorX<Scalar>& log_probs_new, const VectorX<Scalar>& log_probs_old,
                const VectorX<Scalar>& advantages, Scalar clip) {
  if (log_probs_new.size() != advantages.size() || log_probs_old.size() != advantages.size())
    throw Error("ppo_loss: length mismatch");
  if (advantages.size() == 0) return Scalar(0);
  Scalar total = 0;
  for (Eigen::Index i = 0; i < advantages.size(); ++i) {
    const Scalar rho = std::exp(log_probs_new[i] - log_probs_old[i]);
    const Scalar clipped = std::clamp(rho, Scalar(1) - clip, Scalar(1) + clip);
    total += std::min(rho * advantages[i], clipped * advantages[i]);
  }
  return -total / Scalar(advantages.size());
}

/// 0.5 * mean((V - G)^2).
template <typename Scalar>
Scalar critic_loss(const VectorX<Scalar>& values, const VectorX<Scalar>& returns) {
  if (values.size() != returns.size()) throw Error("critic_loss: length mismatch");
  if (values.size() == 0) return Scalar(0);
  return Scalar(0.5) * (values - returns).squaredNorm() / Scalar(values.size());
}

/// A scalar loss together with its derivatives with respect to the network
/// outputs (logits and values).
template <typename Scalar>
struct LossTerms {
  Scalar value = 0;
  MatrixX<Scalar> d_logits;
  VectorX<Scalar> d_values;
};

template <typename Scalar>
LossTerms<Scalar> zero_terms(Eigen::Index batch, Eigen::Index n_actions) {
  return {Scalar(0), MatrixX<Scalar>::Zero(batch, n_actions), VectorX<Scalar>::Zero(batch)};
}

/// Selected log-probabilities log pi(a_b | s_b) from logits.
template <typename Scalar>
VectorX<Scalar> selected_log_probs(const MatrixX<Scalar>& logits, const Eigen::VectorXi& actions) {
  const MatrixX<Scalar> lp = log_softmax(logits);
  VectorX<Scalar> out(actions.size());
  for (Eigen::Index b = 0; b < actions.size(); ++b) out[b] = lp(b, actions[b]);
  return out;
}

/// Derivative of sum_b w_b log pi(a_b|s_b) with respect to the logits.
template <typename Scalar>
MatrixX<Scalar> d_log_prob(const MatrixX<Scalar>& logits, const Eigen::VectorXi& actions,
                           const VectorX<Scalar>& weights) {
  MatrixX<Scalar> d = -softmax(logits);
  for (Eigen::Index b = 0; b < actions.size(); ++b) d(b, actions[b]) += Scalar(1);
  return d.array().colwise() * weights.array();
}

template <typename Scalar>
LossTerms<Scalar> vpg_terms(const MatrixX<Scalar>& logits, const Eigen::VectorXi& actions,
                            const VectorX<Scalar>& advantages) {
  const Scalar n = Scalar(actions.size());
  LossTerms<Scalar> t = zero_terms<Scalar>(logits.rows(), logits.cols());
  t.value = vpg_loss<Scalar>(selected_log_probs(logits, actions), advantages);
  t.d_logits = d_log_prob<Scalar>(logits, actions, VectorX<Scalar>(-advantages / n));
  return t;
}

template <typename Scalar>
LossTerms<Scalar> ppo_terms(const MatrixX<Scalar>& logits, const Eigen::VectorXi& actions,
                            const VectorX<Scalar>& log_probs_old, const VectorX<Scalar>& advantages,
                            Scalar clip) {
  const Scalar n = Scalar(actions.size());
  const VectorX<Scalar> lp = selected_log_probs(logits, actions);
  LossTerms<Scalar> t = zero_terms<Scalar>(logits.rows(), logits.cols());
  t.value = ppo_loss<Scalar>(lp, log_probs_old, advantages, clip);
  // The unclipped branch carries gradient rho*A wrt log pi; the clipped
  // branch is constant in the parameters.
  VectorX<Scalar> w(actions.size());
  for (Eigen::Index b = 0; b < actions.size(); ++b) {
    const Scalar rho = std::exp(lp[b] - log_probs_old[b]);
    const Scalar clipped = std::clamp(rho, Scalar(1) - clip, Scalar(1) + clip);
    const bool unclipped_active = rho * advantages[b] <= clipped * advantages[b];
    w[b] = unclipped_active ? -rho * advantages[b] / n : Scalar(0);
  }
  t.d_logits = d_log_prob<Scalar>(logits, actions, w);
  return t;
}

template <typename Scalar>
LossTerms<Scalar> critic_terms(const VectorX<Scalar>& values, const VectorX<Scalar>& returns,
                               Eigen::Index n_actions) {
  LossTerms<Scalar> t = zero_terms<Scalar>(values.size(), n_actions);
  t.value = critic_loss<Scalar>(values, returns);
  t.d_values = (values - returns) / Scalar(values.size());
  return t;
}

/// Mean policy entropy of a batch of logits.
template <typename Scalar>
Scalar mean_entropy(const MatrixX<Scalar>& logits) {
  const MatrixX<Scalar> lp = log_softmax(logits);
  return -(lp.array().exp() * lp.array()).rowwise().sum().mean();
}

/// -coef * mean entropy, i.e. an entropy bonus expressed as a loss.
template <typename Scalar>
LossTerms<Scalar> entropy_terms(const MatrixX<Scalar>& logits, Scalar coef) {
  LossTerms<Scalar> t = zero_terms<Scalar>(logits.rows(), logits.cols());
  if (coef == Scalar(0) || logits.rows() == 0) return t;
  const MatrixX<Scalar> lp = log_softmax(logits);
  const MatrixX<Scalar> p = lp.array().exp().matrix();
  const VectorX<Scalar> h = -(p.array() * lp.array()).rowwise().sum();
  t.value = -coef * h.mean();
  // dH/dz_k = -p_k (log p_k + H)
  MatrixX<Scalar> dh = -(p.array() * (lp.array().colwise() + h.array()));
  t.d_logits = -coef / Scalar(logits.rows()) * dh;
  return t;
}

template <typename Scalar>
LossTerms<Scalar>& operator+=(LossTerms<Scalar>& a, const LossTerms<Scalar>& b) {
  a.value += b.value;
  a.d_logits += b.d_logits;
  a.d_values += b.d_values;
  return a;
}

template <typename Scalar>
LossTerms<Scalar> scaled(LossTerms<Scalar> t, Scalar s) {
  t.value *= s;
  t.d_logits *= s;
  t.d_values *= s;
  return t;
}

/// Loss value and exact parameter gradient for `network` on batch `x`.
/// `loss` maps the network output to LossTerms.
template <typename Net, typename LossFn>
auto gradients(const Net& network, const MatrixX<double>& x, LossFn&& loss) {
  struct Result {
    double value;
    VectorX<double> gradient;
  };
  if (x.rows() == 0) throw Error("gradients: empty batch");
  const auto out = network.forward(x);
  const auto terms = loss(out);
  if (!std::isfinite(terms.value)) throw Error("non-finite loss");
  return Result{terms.value, network.backward(x, terms.d_logits, terms.d_values)};
}

}  // namespace swarm::learn
