#pragma once

#include "swarm/core/error.hpp"
#include "swarm/core/types.hpp"

#include <Eigen/Geometry>

#include <cmath>

namespace swarm {

/// Rodrigues rotation of `v` by `angle` about `axis` (right-hand rule).
/// The result is renormalized.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> rotate_about_axis(const Eigen::Matrix<Scalar, 3, 1>& v,
                                              const Eigen::Matrix<Scalar, 3, 1>& axis,
                                              Scalar angle) {
  const Scalar n = axis.norm();
  if (n == Scalar(0)) {
    if (angle == Scalar(0)) return v.normalized();
    throw Error("degenerate rotation axis");
  }
  const Eigen::Matrix<Scalar, 3, 1> k = axis / n;
  const Scalar c = std::cos(angle);
  const Scalar s = std::sin(angle);
  Eigen::Matrix<Scalar, 3, 1> out = v * c + k.cross(v) * s + k * (k.dot(v)) * (Scalar(1) - c);
  return out.normalized();
}

/// Displacement b - a. Under periodic boundaries each active component is
/// folded into (-box/2, box/2]; a tie at exactly box/2 resolves to +box/2.
inline Vec3 minimum_image_displacement(const Vec3& a, const Vec3& b, const Vec3& box,
                                       Boundary boundary, int dim = 3) {
  Vec3 d = b - a;
  if (boundary == Boundary::periodic) {
    for (int k = 0; k < dim; ++k) d[k] -= box[k] * std::ceil(d[k] / box[k] - 0.5);
  }
  return d;
}

/// Signed in-plane angle from u to v (about +z).
inline double signed_angle_z(const Vec3& u, const Vec3& v) {
  return std::atan2(u.x() * v.y() - u.y() * v.x(), u.x() * v.x() + u.y() * v.y());
}

}  // namespace swarm
