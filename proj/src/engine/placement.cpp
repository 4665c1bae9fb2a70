#include "swarm/engine/placement.hpp"

#include "swarm/core/rng.hpp"

#include <cmath>
#include <numbers>

namespace swarm {

std::vector<Colloid> place_random(int count, int type, const SimParams& params, const Vec3& lower,
                                  const Vec3& upper, std::uint64_t seed, std::int64_t first_id) {
  std::vector<Colloid> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    Colloid c;
    c.id = first_id + i;
    c.type = type;
    RngStream rng(seed, stream_key(static_cast<std::uint64_t>(c.id), StreamPurpose::placement));
    for (int k = 0; k < params.dim; ++k) c.pos[k] = lower[k] + (upper[k] - lower[k]) * rng.next_uniform();
    if (params.dim == 2) {
      const double phi = 2.0 * std::numbers::pi * rng.next_uniform();
      c.director = Vec3(std::cos(phi), std::sin(phi), 0.0);
    } else {
      const double z = 2.0 * rng.next_uniform() - 1.0;
      const double phi = 2.0 * std::numbers::pi * rng.next_uniform();
      const double s = std::sqrt(1.0 - z * z);
      c.director = Vec3(s * std::cos(phi), s * std::sin(phi), z);
    }
    out.push_back(c);
  }
  return out;
}

std::vector<Colloid> place_rod(int count, int type, const Vec3& center, double length, double angle,
                               std::int64_t first_id) {
  std::vector<Colloid> out;
  const Vec3 axis(std::cos(angle), std::sin(angle), 0.0);
  for (int i = 0; i < count; ++i) {
    Colloid c;
    c.id = first_id + i;
    c.type = type;
    const double offset = count > 1 ? length * (static_cast<double>(i) / (count - 1) - 0.5) : 0.0;
    c.pos = center + offset * axis;
    c.director = axis;
    out.push_back(c);
  }
  return out;
}

}  // namespace swarm
