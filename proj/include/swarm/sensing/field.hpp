#pragma once

#include "swarm/core/types.hpp"

#include <string>

namespace swarm {

enum class FieldDecay { gaussian, inverse_distance };

std::string to_string(FieldDecay d);
FieldDecay field_decay_from_string(const std::string& name);

/// Static scalar concentration field with a single point source.
///   gaussian:         A exp(-d^2 / (2 w^2))
///   inverse_distance: A / (1 + d / w)
/// Distances use the minimum image under periodic boundaries.
struct ConcentrationField {
  Vec3 source = Vec3::Zero();
  FieldDecay decay = FieldDecay::gaussian;
  double amplitude = 1.0;
  double width = 1.0;
  Vec3 box = Vec3(1e300, 1e300, 1e300);
  Boundary boundary = Boundary::reflecting;
  int dim = 3;

  double value(const Vec3& pos) const;
  void validate() const;

  bool operator==(const ConcentrationField&) const = default;
};

}  // namespace swarm
