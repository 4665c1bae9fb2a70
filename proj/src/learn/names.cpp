#include "swarm/core/error.hpp"
#include "swarm/learn/network.hpp"
#include "swarm/learn/optimizer.hpp"
#include "swarm/learn/sampling.hpp"
#include "swarm/learn/update.hpp"

namespace swarm::learn {

std::string to_string(Architecture a) { return a == Architecture::disjoint ? "disjoint" : "shared_trunk"; }
Architecture architecture_from_string(const std::string& name) {
  if (name == "disjoint") return Architecture::disjoint;
  if (name == "shared_trunk") return Architecture::shared_trunk;
  throw Error("unknown architecture '" + name + "'");
}

std::string to_string(Sampler s) { return s == Sampler::categorical ? "categorical" : "gumbel"; }
Sampler sampler_from_string(const std::string& name) {
  if (name == "categorical") return Sampler::categorical;
  if (name == "gumbel") return Sampler::gumbel;
  throw Error("unknown sampler '" + name + "'");
}

std::string to_string(OptimizerKind k) { return k == OptimizerKind::sgd ? "sgd" : "adam"; }
OptimizerKind optimizer_from_string(const std::string& name) {
  if (name == "sgd") return OptimizerKind::sgd;
  if (name == "adam") return OptimizerKind::adam;
  throw Error("unknown optimizer '" + name + "'");
}

std::string to_string(Algorithm a) { return a == Algorithm::vpg ? "vpg" : "ppo"; }
Algorithm algorithm_from_string(const std::string& name) {
  if (name == "vpg") return Algorithm::vpg;
  if (name == "ppo") return Algorithm::ppo;
  throw Error("unknown algorithm '" + name + "'");
}

std::string to_string(ReturnsKind r) { return r == ReturnsKind::expected ? "expected" : "gae"; }
ReturnsKind returns_from_string(const std::string& name) {
  if (name == "expected") return ReturnsKind::expected;
  if (name == "gae") return ReturnsKind::gae;
  throw Error("unknown returns estimator '" + name + "'");
}

}  // namespace swarm::learn
