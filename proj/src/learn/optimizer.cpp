#include "swarm/learn/optimizer.hpp"

#include "swarm/core/error.hpp"

#include <cmath>

namespace swarm::learn {

Eigen::VectorXd gradient_ascent_update(const Eigen::VectorXd& theta, const Eigen::VectorXd& grad,
                                       double eta) {
  if (theta.size() != grad.size()) throw Error("gradient/parameter shape mismatch");
  if (!grad.allFinite()) throw Error("non-finite gradient; update aborted");
  return theta - eta * grad;
}

Optimizer::Optimizer(OptimizerConfig config, Eigen::Index n_params)
    : config_(config), m_(Eigen::VectorXd::Zero(n_params)), v_(Eigen::VectorXd::Zero(n_params)) {
  if (!(config_.learning_rate > 0.0)) throw Error("learning rate must be positive");
}

Eigen::VectorXd Optimizer::step(const Eigen::VectorXd& theta, const Eigen::VectorXd& grad) {
  if (config_.kind == OptimizerKind::sgd) {
    Eigen::VectorXd out = gradient_ascent_update(theta, grad, config_.learning_rate);
    ++t_;
    return out;
  }
  if (theta.size() != grad.size() || grad.size() != m_.size()) throw Error("gradient/parameter shape mismatch");
  if (!grad.allFinite()) throw Error("non-finite gradient; update aborted");
  ++t_;
  m_ = config_.beta1 * m_ + (1.0 - config_.beta1) * grad;
  v_ = config_.beta2 * v_ + (1.0 - config_.beta2) * grad.cwiseAbs2();
  const double c1 = 1.0 - std::pow(config_.beta1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(config_.beta2, static_cast<double>(t_));
  const Eigen::ArrayXd m_hat = m_.array() / c1;
  const Eigen::ArrayXd v_hat = v_.array() / c2;
  return theta.array() - config_.learning_rate * m_hat / (v_hat.sqrt() + config_.epsilon);
}

void Optimizer::restore(Eigen::VectorXd m, Eigen::VectorXd v, long t) {
  if (m.size() != m_.size() || v.size() != v_.size()) throw Error("optimizer state shape mismatch");
  m_ = std::move(m);
  v_ = std::move(v);
  t_ = t;
}

double exploration_schedule(double zeta0, double decay, double t, double episode_time) {
  if (!(episode_time > 0.0)) throw Error("exploration_schedule: episode time must be positive");
  return std::exp(-decay * t / episode_time) * zeta0;
}

}  // namespace swarm::learn
