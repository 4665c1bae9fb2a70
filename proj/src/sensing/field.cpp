#include "swarm/sensing/field.hpp"

#include "swarm/core/error.hpp"
#include "swarm/core/geometry.hpp"

#include <cmath>

namespace swarm {

std::string to_string(FieldDecay d) { return d == FieldDecay::gaussian ? "gaussian" : "inverse_distance"; }

FieldDecay field_decay_from_string(const std::string& name) {
  if (name == "gaussian") return FieldDecay::gaussian;
  if (name == "inverse_distance") return FieldDecay::inverse_distance;
  throw Error("unknown field decay '" + name + "'");
}

double ConcentrationField::value(const Vec3& pos) const {
  const double d = minimum_image_displacement(source, pos, box, boundary, dim).norm();
  if (decay == FieldDecay::gaussian) return amplitude * std::exp(-d * d / (2.0 * width * width));
  return amplitude / (1.0 + d / width);
}

void ConcentrationField::validate() const {
  if (!(amplitude > 0.0)) throw Error("field amplitude must be positive");
  if (!(width > 0.0)) throw Error("field width must be positive");
}

}  // namespace swarm
