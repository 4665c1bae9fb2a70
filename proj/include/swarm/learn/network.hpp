#pragma once

#include "swarm/learn/mlp.hpp"

#include <string>
#include <vector>

namespace swarm::learn {

enum class Architecture { disjoint, shared_trunk };

std::string to_string(Architecture a);
Architecture architecture_from_string(const std::string& name);

struct NetworkShape {
  int input_width = 1;
  int n_actions = 2;
  std::vector<int> hidden = {12};
  Architecture architecture = Architecture::disjoint;

  bool operator==(const NetworkShape&) const = default;
};

/// Actor-critic function: observable batch -> (action logits, state value).
///
/// The disjoint form runs two independent MLPs. The shared-trunk form runs
/// one rectified trunk feeding two linear heads. Parameters are exposed as a
/// single flat vector so optimizers, checkpoints and finite-difference
/// checks all see the same layout.
template <typename Scalar>
class ActorCritic {
 public:
  struct Output {
    MatrixX<Scalar> logits;  // batch x n_actions
    VectorX<Scalar> values;  // batch
  };

  ActorCritic() = default;
  explicit ActorCritic(NetworkShape shape) : shape_(std::move(shape)) {
    if (shape_.input_width < 1 || shape_.n_actions < 1) throw Error("network widths must be positive");
    std::vector<int> trunk_widths{shape_.input_width};
    trunk_widths.insert(trunk_widths.end(), shape_.hidden.begin(), shape_.hidden.end());
    if (shape_.architecture == Architecture::disjoint) {
      auto actor = trunk_widths;
      actor.push_back(shape_.n_actions);
      auto critic = trunk_widths;
      critic.push_back(1);
      actor_ = Mlp<Scalar>(actor);
      critic_ = Mlp<Scalar>(critic);
    } else {
      if (shape_.hidden.empty()) throw Error("a shared trunk needs at least one hidden layer");
      trunk_ = Mlp<Scalar>(trunk_widths, true);
      actor_ = Mlp<Scalar>({trunk_widths.back(), shape_.n_actions});
      critic_ = Mlp<Scalar>({trunk_widths.back(), 1});
    }
  }

  const NetworkShape& shape() const { return shape_; }
  int n_actions() const { return shape_.n_actions; }
  int input_width() const { return shape_.input_width; }

  void initialize(RngStream& rng) {
    if (shared()) trunk_.initialize(rng);
    actor_.initialize(rng);
    critic_.initialize(rng);
  }

  Output forward(const MatrixX<Scalar>& x) const {
    Tapes tapes;
    return forward(x, tapes);
  }

  /// Gradient of a scalar loss given its derivatives with respect to the
  /// logits and values of `forward(x)`.
  VectorX<Scalar> backward(const MatrixX<Scalar>& x, const MatrixX<Scalar>& d_logits,
                           const VectorX<Scalar>& d_values) const {
    Tapes tapes;
    forward(x, tapes);
    VectorX<Scalar> grad = VectorX<Scalar>::Zero(parameter_count());
    Eigen::Index o = 0;
    if (shared()) {
      const Eigen::Index nt = trunk_.parameter_count();
      const Eigen::Index na = actor_.parameter_count();
      const Eigen::Index nc = critic_.parameter_count();
      MatrixX<Scalar> d_features = actor_.backward(tapes.actor, d_logits, grad.segment(nt, na));
      d_features += critic_.backward(tapes.critic, MatrixX<Scalar>(d_values), grad.segment(nt + na, nc));
      trunk_.backward(tapes.trunk, d_features, grad.segment(0, nt));
    } else {
      const Eigen::Index na = actor_.parameter_count();
      actor_.backward(tapes.actor, d_logits, grad.segment(o, na));
      critic_.backward(tapes.critic, MatrixX<Scalar>(d_values), grad.segment(na, critic_.parameter_count()));
    }
    return grad;
  }

  Eigen::Index parameter_count() const {
    return (shared() ? trunk_.parameter_count() : 0) + actor_.parameter_count() + critic_.parameter_count();
  }

  /// Flat layout: [trunk], actor, critic.
  VectorX<Scalar> parameters() const {
    VectorX<Scalar> out(parameter_count());
    Eigen::Index o = 0;
    auto put = [&](const Mlp<Scalar>& m) {
      out.segment(o, m.parameter_count()) = m.parameters();
      o += m.parameter_count();
    };
    if (shared()) put(trunk_);
    put(actor_);
    put(critic_);
    return out;
  }

  void set_parameters(const Eigen::Ref<const VectorX<Scalar>>& theta) {
    if (theta.size() != parameter_count()) throw Error("parameter vector size mismatch");
    Eigen::Index o = 0;
    auto get = [&](Mlp<Scalar>& m) {
      m.set_parameters(theta.segment(o, m.parameter_count()));
      o += m.parameter_count();
    };
    if (shared()) get(trunk_);
    get(actor_);
    get(critic_);
  }

  /// Index range of the actor (policy-only) parameters in the flat layout.
  /// Empty for the shared trunk, whose trunk also feeds the critic.
  std::pair<Eigen::Index, Eigen::Index> actor_range() const {
    if (shared()) return {0, 0};
    return {0, actor_.parameter_count()};
  }

  const Mlp<Scalar>& actor() const { return actor_; }
  const Mlp<Scalar>& critic() const { return critic_; }
  const Mlp<Scalar>& trunk() const { return trunk_; }

 private:
  struct Tapes {
    typename Mlp<Scalar>::Tape trunk, actor, critic;
  };

  bool shared() const { return shape_.architecture == Architecture::shared_trunk; }

  Output forward(const MatrixX<Scalar>& x, Tapes& tapes) const {
    if (x.cols() != shape_.input_width) {
      throw Error("observable width mismatch: network expects " + std::to_string(shape_.input_width) +
                  ", got " + std::to_string(x.cols()));
    }
    Output out;
    if (shared()) {
      MatrixX<Scalar> features = trunk_.forward(x, tapes.trunk);
      out.logits = actor_.forward(features, tapes.actor);
      out.values = critic_.forward(features, tapes.critic).col(0);
    } else {
      out.logits = actor_.forward(x, tapes.actor);
      out.values = critic_.forward(x, tapes.critic).col(0);
    }
    return out;
  }

  NetworkShape shape_;
  Mlp<Scalar> trunk_, actor_, critic_;
};

using ActorCriticNet = ActorCritic<double>;

}  // namespace swarm::learn
