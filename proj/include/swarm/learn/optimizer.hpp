#pragma once

#include <Eigen/Core>

#include <string>

namespace swarm::learn {

/// theta - eta * grad. Throws if the gradient is non-finite.
Eigen::VectorXd gradient_ascent_update(const Eigen::VectorXd& theta, const Eigen::VectorXd& grad,
                                       double eta);

enum class OptimizerKind { sgd, adam };

std::string to_string(OptimizerKind k);
OptimizerKind optimizer_from_string(const std::string& name);

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::adam;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;

  bool operator==(const OptimizerConfig&) const = default;
};

/// Descent on a loss; plain gradient steps or adaptive moments.
class Optimizer {
 public:
  Optimizer() = default;
  Optimizer(OptimizerConfig config, Eigen::Index n_params);

  Eigen::VectorXd step(const Eigen::VectorXd& theta, const Eigen::VectorXd& grad);

  const OptimizerConfig& config() const { return config_; }
  const Eigen::VectorXd& first_moment() const { return m_; }
  const Eigen::VectorXd& second_moment() const { return v_; }
  long steps() const { return t_; }
  void restore(Eigen::VectorXd m, Eigen::VectorXd v, long t);

 private:
  OptimizerConfig config_;
  Eigen::VectorXd m_, v_;
  long t_ = 0;
};

/// zeta = exp(-decay * t / T) * zeta0.
double exploration_schedule(double zeta0, double decay, double t, double episode_time);

}  // namespace swarm::learn
