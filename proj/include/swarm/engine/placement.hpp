#pragma once

#include "swarm/core/types.hpp"

#include <cstdint>
#include <vector>

namespace swarm {

/// Uniformly random positions inside `region` (lower/upper corners) with
/// isotropic random directors. Ids continue from `first_id`.
std::vector<Colloid> place_random(int count, int type, const SimParams& params, const Vec3& lower,
                                  const Vec3& upper, std::uint64_t seed, std::int64_t first_id = 0);

/// Evenly spaced particles on a straight line centered at `center`, all
/// sharing the line direction as director.
std::vector<Colloid> place_rod(int count, int type, const Vec3& center, double length,
                               double angle, std::int64_t first_id = 0);

}  // namespace swarm
