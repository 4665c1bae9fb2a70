#pragma once

#include "swarm/core/error.hpp"
#include "swarm/core/rng.hpp"

#include <Eigen/Core>

#include <cmath>
#include <string>
#include <vector>

namespace swarm::learn {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
struct DenseLayer {
  MatrixX<Scalar> weight;  // out x in
  VectorX<Scalar> bias;    // out
};

/// Dense network with rectifier activations between layers. Batches are
/// row-major: one sample per row. `relu_output` also rectifies the last
/// layer, which is what a shared trunk needs.
template <typename Scalar>
class Mlp {
 public:
  struct Tape {
    std::vector<MatrixX<Scalar>> inputs;  // input to each layer
    std::vector<MatrixX<Scalar>> pre;     // pre-activation of each layer
  };

  Mlp() = default;
  explicit Mlp(std::vector<int> widths, bool relu_output = false)
      : widths_(std::move(widths)), relu_output_(relu_output) {
    if (widths_.size() < 2) throw Error("an MLP needs at least an input and an output width");
    for (std::size_t l = 0; l + 1 < widths_.size(); ++l) {
      if (widths_[l] < 1 || widths_[l + 1] < 1) throw Error("MLP widths must be positive");
      layers_.push_back({MatrixX<Scalar>::Zero(widths_[l + 1], widths_[l]),
                         VectorX<Scalar>::Zero(widths_[l + 1])});
    }
  }

  /// Uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)) weights and biases.
  void initialize(RngStream& rng) {
    for (auto& layer : layers_) {
      const Scalar bound = Scalar(1) / std::sqrt(Scalar(layer.weight.cols()));
      for (Eigen::Index i = 0; i < layer.weight.size(); ++i)
        layer.weight.data()[i] = bound * Scalar(2 * rng.next_uniform() - 1);
      for (Eigen::Index i = 0; i < layer.bias.size(); ++i)
        layer.bias[i] = bound * Scalar(2 * rng.next_uniform() - 1);
    }
  }

  int input_width() const { return widths_.front(); }
  int output_width() const { return widths_.back(); }
  const std::vector<int>& widths() const { return widths_; }
  bool relu_output() const { return relu_output_; }
  const std::vector<DenseLayer<Scalar>>& layers() const { return layers_; }
  std::vector<DenseLayer<Scalar>>& layers() { return layers_; }

  MatrixX<Scalar> forward(const MatrixX<Scalar>& x) const {
    Tape tape;
    return forward(x, tape);
  }

  MatrixX<Scalar> forward(const MatrixX<Scalar>& x, Tape& tape) const {
    if (x.cols() != input_width()) {
      throw Error("input width mismatch: expected " + std::to_string(input_width()) + ", got " +
                  std::to_string(x.cols()));
    }
    tape.inputs.clear();
    tape.pre.clear();
    MatrixX<Scalar> a = x;
    for (std::size_t l = 0; l < layers_.size(); ++l) {
      tape.inputs.push_back(a);
      MatrixX<Scalar> z = a * layers_[l].weight.transpose();
      z.rowwise() += layers_[l].bias.transpose();
      tape.pre.push_back(z);
      a = rectified(l) ? MatrixX<Scalar>(z.cwiseMax(Scalar(0))) : z;
    }
    return a;
  }

  /// Reverse pass. Writes parameter gradients into `grad` (flat layout of
  /// `parameters()`) and returns the gradient with respect to the input.
  MatrixX<Scalar> backward(const Tape& tape, const MatrixX<Scalar>& d_output,
                           Eigen::Ref<VectorX<Scalar>> grad) const {
    MatrixX<Scalar> delta = d_output;
    Eigen::Index offset = parameter_count();
    for (std::size_t l = layers_.size(); l-- > 0;) {
      const auto& layer = layers_[l];
      if (rectified(l)) delta = delta.cwiseProduct((tape.pre[l].array() > Scalar(0)).matrix().template cast<Scalar>());
      const Eigen::Index nb = layer.bias.size();
      const Eigen::Index nw = layer.weight.size();
      offset -= nb;
      grad.segment(offset, nb) += delta.colwise().sum().transpose();
      offset -= nw;
      MatrixX<Scalar> dw = delta.transpose() * tape.inputs[l];
      grad.segment(offset, nw) += Eigen::Map<const VectorX<Scalar>>(dw.data(), nw);
      delta = delta * layer.weight;
    }
    return delta;
  }

  Eigen::Index parameter_count() const {
    Eigen::Index n = 0;
    for (const auto& layer : layers_) n += layer.weight.size() + layer.bias.size();
    return n;
  }

  /// Flat layout: for each layer, column-major weight then bias.
  VectorX<Scalar> parameters() const {
    VectorX<Scalar> out(parameter_count());
    Eigen::Index o = 0;
    for (const auto& layer : layers_) {
      out.segment(o, layer.weight.size()) = Eigen::Map<const VectorX<Scalar>>(layer.weight.data(), layer.weight.size());
      o += layer.weight.size();
      out.segment(o, layer.bias.size()) = layer.bias;
      o += layer.bias.size();
    }
    return out;
  }

  void set_parameters(const Eigen::Ref<const VectorX<Scalar>>& theta) {
    if (theta.size() != parameter_count()) throw Error("parameter vector size mismatch");
    Eigen::Index o = 0;
    for (auto& layer : layers_) {
      Eigen::Map<VectorX<Scalar>>(layer.weight.data(), layer.weight.size()) = theta.segment(o, layer.weight.size());
      o += layer.weight.size();
      layer.bias = theta.segment(o, layer.bias.size());
      o += layer.bias.size();
    }
  }

 private:
  bool rectified(std::size_t l) const { return l + 1 < layers_.size() || relu_output_; }

  std::vector<int> widths_;
  bool relu_output_ = false;
  std::vector<DenseLayer<Scalar>> layers_;
};

}  // namespace swarm::learn
