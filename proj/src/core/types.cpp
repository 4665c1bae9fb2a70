#include "swarm/core/types.hpp"

#include "swarm/core/error.hpp"

#include <cmath>

namespace swarm {

std::string to_string(Boundary b) { return b == Boundary::periodic ? "periodic" : "reflecting"; }

Boundary boundary_from_string(const std::string& name) {
  if (name == "periodic") return Boundary::periodic;
  if (name == "reflecting") return Boundary::reflecting;
  throw Error("unknown boundary '" + name + "'");
}

void SimParams::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(gamma_t)) throw Error("gamma_t must be strictly positive");
  if (!positive(gamma_r)) throw Error("gamma_r must be strictly positive");
  if (!positive(dt)) throw Error("dt must be strictly positive");
  if (!std::isfinite(kT) || kT < 0.0) throw Error("kT must be non-negative");
  if (dim != 2 && dim != 3) throw Error("dim must be 2 or 3");
  if (steps_per_slice < 1) throw Error("steps_per_slice must be at least 1");
  for (int k = 0; k < dim; ++k) {
    if (!positive(box[k])) throw Error("box lengths must be strictly positive");
  }
}

}  // namespace swarm
