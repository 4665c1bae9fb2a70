#pragma once

#include "swarm/core/types.hpp"

#include <functional>
#include <vector>

namespace swarm {

/// Whatever decides actions for the particles. The engine queries it once
/// per time slice and checks the kill switch right after.
class ForceFunction {
 public:
  virtual ~ForceFunction() = default;

  /// One action per colloid, in input order.
  virtual std::vector<Action> calc_action(const std::vector<Colloid>& colloids) = 0;
  virtual bool kill_switch() const { return false; }
};

/// Adapter for tests and simple drivers.
class LambdaForceFunction : public ForceFunction {
 public:
  using Fn = std::function<std::vector<Action>(const std::vector<Colloid>&)>;
  explicit LambdaForceFunction(Fn fn) : fn_(std::move(fn)) {}

  std::vector<Action> calc_action(const std::vector<Colloid>& colloids) override { return fn_(colloids); }

 private:
  Fn fn_;
};

/// Applies the no-op action to everything.
class NullForceFunction : public ForceFunction {
 public:
  std::vector<Action> calc_action(const std::vector<Colloid>& colloids) override {
    return std::vector<Action>(colloids.size());
  }
};

struct IntegrateResult {
  bool terminated = false;
  int slices_completed = 0;
};

/// The environment contract: step forward, report particles.
class Engine {
 public:
  virtual ~Engine() = default;

  virtual IntegrateResult integrate(int n_slices, ForceFunction& force_function) = 0;
  virtual std::vector<Colloid> get_particle_data() const = 0;
  virtual double time() const = 0;
  virtual const SimParams& params() const = 0;
};

}  // namespace swarm
