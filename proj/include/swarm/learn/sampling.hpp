#pragma once

#include "swarm/core/rng.hpp"

#include <Eigen/Core>

#include <string>

namespace swarm::learn {

enum class Sampler { categorical, gumbel };

std::string to_string(Sampler s);
Sampler sampler_from_string(const std::string& name);

struct SampledAction {
  int index = 0;
  double log_prob = 0.0;
};

/// Draws an action index from softmax(logits).
///
/// categorical: inverse-CDF lookup with a single uniform draw.
/// gumbel: argmax_i(logit_i + g_i) with g_i = -log(-log u_i).
///
/// Returns the drawn index and its log-probability under the policy.
/// Throws on non-finite logits.
SampledAction sample_action(const Eigen::Ref<const Eigen::VectorXd>& logits, Sampler sampler,
                            RngStream& rng);

}  // namespace swarm::learn
