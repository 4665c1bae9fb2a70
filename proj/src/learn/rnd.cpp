#include "swarm/learn/rnd.hpp"

#include "swarm/core/error.hpp"

#include <algorithm>
#include <cmath>

namespace swarm::learn {

void RunningStat::push(double x) {
  ++n_;
  const double d = x - mean_;
  mean_ += d / static_cast<double>(n_);
  m2_ += d * (x - mean_);
}

double RunningStat::stddev() const { return n_ > 1 ? std::sqrt(m2_ / static_cast<double>(n_ - 1)) : 0.0; }

RandomNetworkDistillation::RandomNetworkDistillation(RndConfig config) : config_(std::move(config)) {
  std::vector<int> widths{config_.input_width};
  widths.insert(widths.end(), config_.hidden.begin(), config_.hidden.end());
  widths.push_back(config_.embedding_width);
  target_ = Mlp<double>(widths);
  predictor_ = Mlp<double>(widths);
  RngStream target_rng(config_.seed, stream_key(1, StreamPurpose::init));
  RngStream predictor_rng(config_.seed, stream_key(2, StreamPurpose::init));
  target_.initialize(target_rng);
  predictor_.initialize(predictor_rng);
}

Eigen::VectorXd RandomNetworkDistillation::prediction_error(const Eigen::MatrixXd& states) const {
  if (states.cols() != config_.input_width) throw Error("RND: state width mismatch");
  return (target_.forward(states) - predictor_.forward(states)).rowwise().squaredNorm();
}

double RandomNetworkDistillation::normalizer() const {
  if (stats_.count() < 2) return 1.0;
  return std::max(stats_.stddev(), 1e-8);
}

Eigen::VectorXd RandomNetworkDistillation::reward(const Eigen::MatrixXd& states) const {
  return prediction_error(states) / normalizer();
}

void RandomNetworkDistillation::observe(const Eigen::VectorXd& raw_errors) {
  for (double e : raw_errors) stats_.push(e);
}

std::pair<double, Eigen::VectorXd> RandomNetworkDistillation::loss_and_gradient(
    const Eigen::MatrixXd& states) const {
  if (states.rows() == 0) throw Error("RND: empty batch");
  if (states.cols() != config_.input_width) throw Error("RND: state width mismatch");
  Mlp<double>::Tape tape;
  const Eigen::MatrixXd diff = predictor_.forward(states, tape) - target_.forward(states);
  const double n = static_cast<double>(states.rows());
  const double loss = diff.rowwise().squaredNorm().sum() / n;
  if (!std::isfinite(loss)) throw Error("non-finite loss");
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(predictor_.parameter_count());
  predictor_.backward(tape, 2.0 * diff / n, grad);
  return {loss, grad};
}

double RandomNetworkDistillation::train(const Eigen::MatrixXd& states, double eta) {
  auto [loss, grad] = loss_and_gradient(states);
  if (!grad.allFinite()) throw Error("non-finite gradient; update aborted");
  predictor_.set_parameters(predictor_.parameters() - eta * grad);
  return loss;
}

}  // namespace swarm::learn
