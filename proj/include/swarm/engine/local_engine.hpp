#pragma once

#include "swarm/core/rng.hpp"
#include "swarm/core/types.hpp"
#include "swarm/engine/engine.hpp"
#include "swarm/engine/interactions.hpp"

#include <cstdint>
#include <vector>

namespace swarm {

struct EngineState {
  std::vector<Colloid> colloids;
  double time = 0.0;
  SimParams params;
  InteractionConfig interactions;
};

/// Euler-Maruyama position update for one step, before boundary handling:
/// r + dt/gamma_t (F_act e + F_int) + sqrt(2 kT dt / gamma_t) xi.
/// Draws `params.dim` gaussians from `rng`.
Vec3 step_translation(const Colloid& colloid, const Action& action, const SimParams& params,
                      const Vec3& interaction_force, RngStream& rng);

/// Director update for one step. A set `new_direction` replaces the
/// director and the torque is ignored. In 2D only the z component of the
/// torque and one noise degree of freedom act; in 3D torque and noise are
/// projected perpendicular to the director.
Vec3 step_rotation(const Colloid& colloid, const Action& action, const SimParams& params,
                   RngStream& rng);

/// Folds a position back into the box. Reflecting walls also flip the
/// director component along the violated axis.
void apply_boundary(Vec3& pos, Vec3& director, const SimParams& params);

/// Pairwise WCA forces for all colloids (Newton's third law applied per pair).
std::vector<Vec3> interaction_forces(const std::vector<Colloid>& colloids, const SimParams& params,
                                     const InteractionConfig& interactions,
                                     std::size_t* overlaps = nullptr);

/// In-process simulation engine.
class LocalEngine : public Engine {
 public:
  LocalEngine(SimParams params, std::vector<Colloid> colloids, InteractionConfig interactions,
              std::uint64_t seed);

  IntegrateResult integrate(int n_slices, ForceFunction& force_function) override;
  std::vector<Colloid> get_particle_data() const override { return state_.colloids; }
  double time() const override { return state_.time; }
  const SimParams& params() const override { return state_.params; }

  /// Applies the given actions for one slice of integrator steps.
  void advance_slice(const std::vector<Action>& actions);

  const EngineState& state() const { return state_; }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t steps_taken() const { return step_count_; }
  std::size_t overlap_warnings() const { return overlaps_; }

 private:
  void step(const std::vector<Action>& actions);
  void step_rigid(int type, const std::vector<Vec3>& forces, std::vector<Colloid>& next,
                  std::vector<bool>& handled) const;

  EngineState state_;
  std::uint64_t seed_;
  std::uint64_t step_count_ = 0;
  std::size_t overlaps_ = 0;
};

}  // namespace swarm
