#include "swarm/engine/interactions.hpp"

#include "swarm/core/error.hpp"

#include <cmath>

namespace swarm {

double wca_force_magnitude(double r, double sigma, double epsilon) {
  if (r >= std::pow(2.0, 1.0 / 6.0) * sigma) return 0.0;
  const double s = sigma / r;
  const double s6 = s * s * s * s * s * s;
  const double s7 = s6 * s;
  const double s13 = s6 * s7;
  return 24.0 * epsilon * (2.0 * s13 - s7) / sigma;
}

Vec3 wca_pair_force(const Vec3& separation, double sigma, double epsilon, std::size_t* overlaps) {
  double r = separation.norm();
  Vec3 dir = r > 0.0 ? Vec3(separation / r) : Vec3(Vec3::UnitX());
  const double floor = 1e-6 * sigma;
  if (r < floor) {
    r = floor;
    if (overlaps) ++*overlaps;
  }
  return -wca_force_magnitude(r, sigma, epsilon) * dir;
}

}  // namespace swarm
