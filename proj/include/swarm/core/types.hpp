#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace swarm {

using Vec3 = Eigen::Vector3d;

/// Snapshot of a single particle. 2D systems keep z components at zero.
struct Colloid {
  Vec3 pos = Vec3::Zero();
  Vec3 director = Vec3::UnitX();
  Vec3 velocity = Vec3::Zero();
  std::int64_t id = 0;
  int type = 0;

  bool operator==(const Colloid& other) const {
    return pos == other.pos && director == other.director && velocity == other.velocity &&
           id == other.id && type == other.type;
  }
};

/// A control decision. Default-constructed value is the no-op.
struct Action {
  double force = 0.0;
  Vec3 torque = Vec3::Zero();
  std::optional<Vec3> new_direction;

  bool operator==(const Action& other) const {
    return force == other.force && torque == other.torque && new_direction == other.new_direction;
  }
};

enum class Boundary { reflecting, periodic };

std::string to_string(Boundary b);
Boundary boundary_from_string(const std::string& name);

struct SimParams {
  double gamma_t = 1.0;
  double gamma_r = 1.0;
  double kT = 0.0;
  double dt = 0.01;
  int dim = 2;
  Vec3 box = Vec3(10.0, 10.0, 10.0);
  int steps_per_slice = 1;
  Boundary boundary = Boundary::periodic;

  /// Throws swarm::Error naming the first offending field.
  void validate() const;

  double slice_duration() const { return dt * steps_per_slice; }

  bool operator==(const SimParams&) const = default;
};

}  // namespace swarm
