#pragma once

#include "swarm/learn/network.hpp"
#include "swarm/learn/optimizer.hpp"

#include <filesystem>

namespace swarm::learn {

/// JSON document with shapes, binary64 parameters (round-trip decimal),
/// optimizer moments and the update count.
void save_checkpoint(const std::filesystem::path& path, const ActorCriticNet& network,
                     const Optimizer& optimizer, long update_count);

/// Loads into an existing network; rejects shape mismatches.
long load_checkpoint(const std::filesystem::path& path, ActorCriticNet& network, Optimizer& optimizer);

}  // namespace swarm::learn
