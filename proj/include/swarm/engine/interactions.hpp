#pragma once

#include "swarm/core/types.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace swarm {

struct InteractionConfig {
  bool enabled = false;
  double sigma = 1.0;
  double epsilon = 1.0;
  /// Species moved as overdamped rigid bodies (e.g. a rod). Members take
  /// part in pair forces but receive no thermal noise.
  std::vector<int> rigid_types;

  double cutoff() const { return std::pow(2.0, 1.0 / 6.0) * sigma; }
  bool operator==(const InteractionConfig&) const = default;
};

/// Weeks-Chandler-Andersen force on particle i, where `separation` points
/// from i to j. Separations below 1e-6 sigma are clamped; `overlaps` counts
/// those events when provided.
Vec3 wca_pair_force(const Vec3& separation, double sigma, double epsilon,
                    std::size_t* overlaps = nullptr);

/// Magnitude of the WCA force at distance r (zero beyond the cutoff).
double wca_force_magnitude(double r, double sigma, double epsilon);

}  // namespace swarm
