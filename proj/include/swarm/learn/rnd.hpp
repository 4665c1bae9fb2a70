#pragma once

#include "swarm/learn/mlp.hpp"

#include <cstdint>
#include <vector>

namespace swarm::learn {

struct RndConfig {
  int input_width = 1;
  std::vector<int> hidden = {32, 32};
  int embedding_width = 8;
  double learning_rate = 1e-3;
  std::uint64_t seed = 0;

  bool operator==(const RndConfig&) const = default;
};

/// Welford running mean/variance.
class RunningStat {
 public:
  void push(double x);
  double mean() const { return mean_; }
  double stddev() const;
  std::size_t count() const { return n_; }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Random network distillation: a frozen random target embedding and a
/// trainable predictor. The squared prediction error is the curiosity
/// signal; it shrinks on states the predictor has been trained on.
class RandomNetworkDistillation {
 public:
  RandomNetworkDistillation() = default;
  explicit RandomNetworkDistillation(RndConfig config);

  /// ||f_target(s) - f_pred(s)||^2 per row, unnormalized.
  Eigen::VectorXd prediction_error(const Eigen::MatrixXd& states) const;

  /// Prediction error divided by the running standard deviation of past
  /// errors (floor 1e-8; 1 before any statistics exist).
  Eigen::VectorXd reward(const Eigen::MatrixXd& states) const;

  /// Feeds raw errors into the normalizer.
  void observe(const Eigen::VectorXd& raw_errors);

  /// Loss (mean prediction error) and its gradient wrt predictor parameters.
  std::pair<double, Eigen::VectorXd> loss_and_gradient(const Eigen::MatrixXd& states) const;

  /// One plain gradient step on the predictor. Returns the pre-step loss.
  double train(const Eigen::MatrixXd& states, double eta);
  double train(const Eigen::MatrixXd& states) { return train(states, config_.learning_rate); }

  const Mlp<double>& target() const { return target_; }
  const Mlp<double>& predictor() const { return predictor_; }
  Mlp<double>& predictor() { return predictor_; }
  const RndConfig& config() const { return config_; }
  double normalizer() const;

 private:
  RndConfig config_;
  Mlp<double> target_;
  Mlp<double> predictor_;
  RunningStat stats_;
};

}  // namespace swarm::learn
