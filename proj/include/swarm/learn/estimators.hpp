#pragma once

#include "swarm/core/error.hpp"
#include "swarm/learn/mlp.hpp"

#include <cmath>

namespace swarm::learn {

/// Discounted returns G_t = sum_{t'>=t} gamma^(t'-t) r_t' via the backward
/// recursion G_t = r_t + gamma G_{t+1}, seeded with `bootstrap`.
template <typename Scalar>
VectorX<Scalar> expected_returns(const VectorX<Scalar>& rewards, Scalar gamma, Scalar bootstrap = 0) {
  VectorX<Scalar> g(rewards.size());
  Scalar running = bootstrap;
  for (Eigen::Index t = rewards.size(); t-- > 0;) {
    running = rewards[t] + gamma * running;
    g[t] = running;
  }
  return g;
}

/// Standardizes to mean 0 and unit (population) standard deviation; the
/// standard deviation is floored at 1e-8.
template <typename Scalar>
VectorX<Scalar> normalize_advantages(const VectorX<Scalar>& a) {
  if (a.size() == 0) return a;
  const Scalar mean = a.mean();
  const VectorX<Scalar> centered = a.array() - mean;
  const Scalar std = std::sqrt(centered.squaredNorm() / Scalar(a.size()));
  return centered / std::max(std, Scalar(1e-8));
}

/// A_t = G_t - V_t, optionally standardized.
template <typename Scalar>
VectorX<Scalar> advantages_expected(const VectorX<Scalar>& returns, const VectorX<Scalar>& values,
                                    bool normalize = false) {
  if (returns.size() != values.size()) throw Error("advantages: returns/values length mismatch");
  VectorX<Scalar> a = returns - values;
  return normalize ? normalize_advantages(a) : a;
}

/// Generalized advantage estimation with terminal value `bootstrap`:
/// delta_t = r_t + gamma V_{t+1} - V_t, A_t = sum_l (gamma lambda)^l delta_{t+l}.
template <typename Scalar>
VectorX<Scalar> advantages_gae(const VectorX<Scalar>& rewards, const VectorX<Scalar>& values,
                               Scalar gamma, Scalar lambda, Scalar bootstrap = 0) {
  if (rewards.size() != values.size()) throw Error("gae: rewards/values length mismatch");
  const Eigen::Index n = rewards.size();
  VectorX<Scalar> a(n);
  Scalar running = 0;
  for (Eigen::Index t = n; t-- > 0;) {
    const Scalar next_value = t + 1 < n ? values[t + 1] : bootstrap;
    const Scalar delta = rewards[t] + gamma * next_value - values[t];
    running = delta + gamma * lambda * running;
    a[t] = running;
  }
  return a;
}

}  // namespace swarm::learn
