#include "swarm/control/lymburn.hpp"

#include "swarm/core/geometry.hpp"

namespace swarm {

LymburnParams LymburnParams::with_defaults(const Vec3& box) const {
  LymburnParams p = *this;
  if (!p.r_sense) p.r_sense = 0.25 * box.head<2>().minCoeff();
  if (!p.r_repulse) p.r_repulse = 0.5 * *p.r_sense;
  return p;
}

Vec3 lymburn_force(const std::vector<Colloid>& colloids, std::size_t focal, const LymburnParams& params,
                   const SimParams& sim) {
  const LymburnParams p = params.with_defaults(sim.box);
  const Colloid& me = colloids[focal];
  Vec3 align = Vec3::Zero();
  Vec3 cohesion = Vec3::Zero();
  for (std::size_t j = 0; j < colloids.size(); ++j) {
    if (j == focal || colloids[j].type != me.type) continue;
    // From j to i.
    const Vec3 r = minimum_image_displacement(colloids[j].pos, me.pos, sim.box, sim.boundary, sim.dim);
    const double dist = r.norm();
    if (dist > *p.r_sense || dist == 0.0) continue;
    const Vec3 unit = r / dist;
    align += colloids[j].velocity - me.velocity;
    if (dist < *p.r_repulse) cohesion += p.a_repulse * unit;
    cohesion -= p.a_attract * unit;
  }
  const Vec3 to_home = minimum_image_displacement(me.pos, p.home, sim.box, sim.boundary, sim.dim);
  Vec3 f = p.a_align * align + cohesion + p.a_home * to_home;
  if (sim.dim == 2) f.z() = 0.0;
  return f;
}

Action lymburn_swarm_rule(const std::vector<Colloid>& colloids, std::size_t focal, const LymburnParams& params,
                          const SimParams& sim) {
  const Vec3 f = lymburn_force(colloids, focal, params, sim);
  const double n = f.norm();
  Action a;
  if (!(n > 0.0)) return a;
  a.new_direction = f / n;
  a.force = std::min(n, params.f_max);
  return a;
}

LymburnAgent::LymburnAgent(int species, LymburnParams params, SimParams sim)
    : species_(species), params_(params.with_defaults(sim.box)), sim_(sim) {}

AgentDecision LymburnAgent::decide(const std::vector<Colloid>& colloids, const std::vector<std::size_t>& members) {
  AgentDecision d;
  for (std::size_t i : members) {
    d.actions.push_back(lymburn_swarm_rule(colloids, i, params_, sim_));
    d.indices.push_back(-1);
  }
  return d;
}

}  // namespace swarm
