#pragma once

#include "swarm/control/agent.hpp"

#include <optional>

namespace swarm {

/// Flocking constants for the homing swarm rule. Distances default to
/// fractions of the box when left unset (see `with_defaults`).
struct LymburnParams {
  double a_align = 1.0;
  double a_repulse = 5.0;
  double a_attract = 0.5;
  double a_home = 0.2;
  std::optional<double> r_sense;    // default 0.25 * box
  std::optional<double> r_repulse;  // default 0.5 * r_sense
  double f_max = 10.0;
  Vec3 home = Vec3::Zero();

  LymburnParams with_defaults(const Vec3& box) const;
  bool operator==(const LymburnParams&) const = default;
};

/// Net steering vector for `focal`:
///   a_align sum(v_j - v_i) + sum[a_repulse r_ij (|r_ij| < r_repulse) - a_attract r_ij]
///   + a_home (home - r_i)
/// where r_ij is the unit vector from j to i and sums run over same-species
/// neighbors within r_sense. Distances use the minimum image.
Vec3 lymburn_force(const std::vector<Colloid>& colloids, std::size_t focal, const LymburnParams& params,
                   const SimParams& sim);

/// Points the particle along the net steering vector with force
/// min(|F|, f_max). A zero vector yields the no-op action.
Action lymburn_swarm_rule(const std::vector<Colloid>& colloids, std::size_t focal,
                          const LymburnParams& params, const SimParams& sim);

class LymburnAgent : public Agent {
 public:
  LymburnAgent(int species, LymburnParams params, SimParams sim);

  int species() const override { return species_; }
  AgentKind kind() const override { return AgentKind::classical; }
  AgentDecision decide(const std::vector<Colloid>& colloids, const std::vector<std::size_t>& members) override;

 private:
  int species_;
  LymburnParams params_;
  SimParams sim_;
};

}  // namespace swarm
