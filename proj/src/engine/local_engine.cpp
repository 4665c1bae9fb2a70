#include "swarm/engine/local_engine.hpp"

#include "swarm/core/error.hpp"
#include "swarm/core/geometry.hpp"

#include <cmath>
#include <string>

namespace swarm {

namespace {

// Counter blocks reserved per integrator step on each particle stream.
constexpr std::uint64_t kDrawsPerStep = 4;

bool finite(const Vec3& v) { return v.allFinite(); }

}  // namespace

Vec3 step_translation(const Colloid& colloid, const Action& action, const SimParams& params,
                      const Vec3& interaction_force, RngStream& rng) {
  Vec3 drift = (action.force * colloid.director + interaction_force) * (params.dt / params.gamma_t);
  Vec3 out = colloid.pos + drift;
  if (params.kT > 0.0) {
    const double amp = std::sqrt(2.0 * params.kT * params.dt / params.gamma_t);
    for (int k = 0; k < params.dim; ++k) out[k] += amp * rng.next_gaussian();
  }
  if (params.dim == 2) out.z() = 0.0;
  return out;
}

Vec3 step_rotation(const Colloid& colloid, const Action& action, const SimParams& params,
                   RngStream& rng) {
  if (action.new_direction) {
    Vec3 d = *action.new_direction;
    if (params.dim == 2) d.z() = 0.0;
    const double n = d.norm();
    if (!(n > 0.0) || !std::isfinite(n)) throw Error("new_direction must have non-zero norm");
    return d / n;
  }
  const Vec3& e = colloid.director;
  Vec3 omega = Vec3::Zero();
  const double noise_amp =
      params.kT > 0.0 ? std::sqrt(2.0 * params.kT / (params.gamma_r * params.dt)) : 0.0;
  if (params.dim == 2) {
    omega.z() = action.torque.z() / params.gamma_r;
    if (noise_amp > 0.0) omega.z() += noise_amp * rng.next_gaussian();
  } else {
    omega = (action.torque - action.torque.dot(e) * e) / params.gamma_r;
    if (noise_amp > 0.0) {
      Vec3 xi(rng.next_gaussian(), rng.next_gaussian(), rng.next_gaussian());
      omega += noise_amp * (xi - xi.dot(e) * e);
    }
  }
  const double w = omega.norm();
  if (w == 0.0) return e;
  Vec3 out = rotate_about_axis<double>(e, omega, w * params.dt);
  if (params.dim == 2) {
    out.z() = 0.0;
    out.normalize();
  }
  return out;
}

void apply_boundary(Vec3& pos, Vec3& director, const SimParams& params) {
  for (int k = 0; k < params.dim; ++k) {
    const double L = params.box[k];
    if (params.boundary == Boundary::periodic) {
      pos[k] -= L * std::floor(pos[k] / L);
      if (pos[k] >= L) pos[k] -= L;
      if (pos[k] < 0.0) pos[k] = 0.0;
    } else {
      if (pos[k] < 0.0) {
        pos[k] = -pos[k];
        director[k] = -director[k];
      } else if (pos[k] > L) {
        pos[k] = 2.0 * L - pos[k];
        director[k] = -director[k];
      }
      if (pos[k] < 0.0) pos[k] = 0.0;
      if (pos[k] > L) pos[k] = L;
    }
  }
}

std::vector<Vec3> interaction_forces(const std::vector<Colloid>& colloids, const SimParams& params,
                                     const InteractionConfig& interactions, std::size_t* overlaps) {
  std::vector<Vec3> forces(colloids.size(), Vec3::Zero());
  if (!interactions.enabled) return forces;
  const double cutoff = interactions.cutoff();
  const double cutoff2 = cutoff * cutoff;
  for (std::size_t i = 0; i < colloids.size(); ++i) {
    for (std::size_t j = i + 1; j < colloids.size(); ++j) {
      const Vec3 sep = minimum_image_displacement(colloids[i].pos, colloids[j].pos, params.box,
                                                  params.boundary, params.dim);
      if (sep.squaredNorm() >= cutoff2) continue;
      const Vec3 f = wca_pair_force(sep, interactions.sigma, interactions.epsilon, overlaps);
      forces[i] += f;
      forces[j] -= f;
    }
  }
  return forces;
}

LocalEngine::LocalEngine(SimParams params, std::vector<Colloid> colloids,
                         InteractionConfig interactions, std::uint64_t seed)
    : seed_(seed) {
  params.validate();
  for (std::size_t i = 0; i < colloids.size(); ++i) {
    for (std::size_t j = i + 1; j < colloids.size(); ++j) {
      if (colloids[i].id == colloids[j].id) throw Error("duplicate colloid id " + std::to_string(colloids[i].id));
    }
    auto& c = colloids[i];
    if (params.dim == 2) {
      c.pos.z() = 0.0;
      c.director.z() = 0.0;
      c.velocity.z() = 0.0;
    }
    const double n = c.director.norm();
    if (!(n > 0.0)) throw Error("colloid " + std::to_string(c.id) + " has a zero director");
    c.director /= n;
  }
  state_.colloids = std::move(colloids);
  state_.params = params;
  state_.interactions = interactions;
}

IntegrateResult LocalEngine::integrate(int n_slices, ForceFunction& force_function) {
  if (n_slices < 1) throw Error("n_slices must be at least 1");
  IntegrateResult result;
  for (int s = 0; s < n_slices; ++s) {
    const std::vector<Action> actions = force_function.calc_action(state_.colloids);
    if (force_function.kill_switch()) {
      result.terminated = true;
      return result;
    }
    advance_slice(actions);
    ++result.slices_completed;
  }
  return result;
}

void LocalEngine::advance_slice(const std::vector<Action>& actions) {
  if (actions.size() != state_.colloids.size()) {
    throw Error("action/colloid cardinality: got " + std::to_string(actions.size()) +
                " actions for " + std::to_string(state_.colloids.size()) + " colloids");
  }
  for (int k = 0; k < state_.params.steps_per_slice; ++k) step(actions);
}

void LocalEngine::step(const std::vector<Action>& actions) {
  const SimParams& p = state_.params;
  const std::vector<Vec3> f_int =
      interaction_forces(state_.colloids, p, state_.interactions, &overlaps_);
  std::vector<Colloid> next = state_.colloids;
  std::vector<bool> rigid(next.size(), false);
  for (int type : state_.interactions.rigid_types) step_rigid(type, f_int, next, rigid);
  for (std::size_t i = 0; i < next.size(); ++i) {
    if (rigid[i]) continue;
    const Colloid& c = state_.colloids[i];
    const auto id = static_cast<std::uint64_t>(c.id);
    RngStream trans(seed_, stream_key(id, StreamPurpose::translation), step_count_ * kDrawsPerStep);
    RngStream rot(seed_, stream_key(id, StreamPurpose::rotation), step_count_ * kDrawsPerStep);

    Vec3 pos = step_translation(c, actions[i], p, f_int[i], trans);
    Vec3 dir = step_rotation(c, actions[i], p, rot);
    const Vec3 displacement = pos - c.pos;
    apply_boundary(pos, dir, p);
    if (!finite(pos) || !finite(dir)) {
      throw NumericalBlowUp(step_count_, "colloid " + std::to_string(c.id));
    }
    next[i].pos = pos;
    next[i].director = dir;
    next[i].velocity = displacement / p.dt;
  }
  state_.colloids = std::move(next);
  state_.time += p.dt;
  ++step_count_;
}

void LocalEngine::step_rigid(int type, const std::vector<Vec3>& forces, std::vector<Colloid>& next,
                             std::vector<bool>& handled) const {
  const SimParams& p = state_.params;
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < state_.colloids.size(); ++i) {
    if (state_.colloids[i].type == type) members.push_back(i);
  }
  if (members.empty()) return;
  // Member offsets relative to the first member, unwrapped by minimum image.
  const Vec3 anchor = state_.colloids[members.front()].pos;
  std::vector<Vec3> rel;
  Vec3 com = Vec3::Zero();
  for (std::size_t i : members) {
    rel.push_back(minimum_image_displacement(anchor, state_.colloids[i].pos, p.box, p.boundary, p.dim));
    com += rel.back();
  }
  com /= static_cast<double>(members.size());
  Vec3 total_force = Vec3::Zero();
  Vec3 torque = Vec3::Zero();
  double inertia = 0.0;
  for (std::size_t m = 0; m < members.size(); ++m) {
    const Vec3 arm = rel[m] - com;
    total_force += forces[members[m]];
    torque += arm.cross(forces[members[m]]);
    inertia += arm.squaredNorm();
  }
  const Vec3 shift = total_force * (p.dt / (p.gamma_t * static_cast<double>(members.size())));
  Vec3 omega = Vec3::Zero();
  if (inertia > 0.0) omega = torque / (p.gamma_t * inertia);
  if (p.dim == 2) omega = Vec3(0.0, 0.0, omega.z());
  const double angle = omega.norm() * p.dt;
  for (std::size_t m = 0; m < members.size(); ++m) {
    const Colloid& c = state_.colloids[members[m]];
    const Vec3 arm = rel[m] - com;
    Vec3 new_arm = arm;
    Vec3 dir = c.director;
    if (angle > 0.0) {
      const double len = arm.norm();
      if (len > 0.0) new_arm = rotate_about_axis<double>(arm / len, omega, angle) * len;
      dir = rotate_about_axis<double>(dir, omega, angle);
    }
    Vec3 pos = anchor + com + shift + new_arm;
    const Vec3 displacement = pos - (anchor + rel[m]);
    apply_boundary(pos, dir, p);
    if (!finite(pos) || !finite(dir)) throw NumericalBlowUp(step_count_, "rigid colloid " + std::to_string(c.id));
    next[members[m]].pos = pos;
    next[members[m]].director = dir;
    next[members[m]].velocity = displacement / p.dt;
    handled[members[m]] = true;
  }
}

}  // namespace swarm
