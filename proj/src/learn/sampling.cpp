#include "swarm/learn/sampling.hpp"

#include "swarm/core/error.hpp"

#include <cmath>
#include <limits>

namespace swarm::learn {

SampledAction sample_action(const Eigen::Ref<const Eigen::VectorXd>& logits, Sampler sampler,
                            RngStream& rng) {
  if (logits.size() == 0) throw Error("sample_action: empty logits");
  if (!logits.allFinite()) throw Error("sample_action: non-finite logits");
  const double m = logits.maxCoeff();
  const double lse = m + std::log((logits.array() - m).exp().sum());

  int index = 0;
  if (sampler == Sampler::categorical) {
    const double u = rng.next_uniform();
    double cdf = 0.0;
    index = static_cast<int>(logits.size()) - 1;
    for (Eigen::Index i = 0; i < logits.size(); ++i) {
      cdf += std::exp(logits[i] - lse);
      if (u < cdf) {
        index = static_cast<int>(i);
        break;
      }
    }
    // Rounding can leave the tail with zero mass; never return such an index.
    while (index > 0 && std::exp(logits[index] - lse) == 0.0) --index;
  } else {
    double best = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < logits.size(); ++i) {
      const double g = -std::log(-std::log(rng.next_uniform()));
      const double score = logits[i] + g;
      if (score > best) {
        best = score;
        index = static_cast<int>(i);
      }
    }
  }
  return {index, logits[index] - lse};
}

}  // namespace swarm::learn
