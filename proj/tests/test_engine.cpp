#include <doctest.h>

#include "swarm/core/error.hpp"
#include "swarm/engine/interactions.hpp"
#include "swarm/engine/local_engine.hpp"
#include "swarm/engine/placement.hpp"

#include <cmath>
#include <numbers>

using namespace swarm;

namespace {

SimParams quiet_params(int dim = 2) {
  SimParams p;
  p.dim = dim;
  p.kT = 0.0;
  p.dt = 0.01;
  p.box = Vec3(100, 100, 100);
  p.boundary = Boundary::periodic;
  return p;
}

Colloid particle(std::int64_t id, Vec3 pos, Vec3 director = Vec3::UnitX(), int type = 0) {
  Colloid c;
  c.id = id;
  c.pos = pos;
  c.director = director;
  c.type = type;
  return c;
}

LambdaForceFunction constant(Action a) {
  return LambdaForceFunction([a](const std::vector<Colloid>& cs) { return std::vector<Action>(cs.size(), a); });
}

}  // namespace

TEST_CASE("integrate rejects zero slices and keeps a quiet system fixed") {
  LocalEngine engine(quiet_params(), {particle(0, Vec3(1, 2, 0)), particle(1, Vec3(5, 5, 0))}, {}, 1);
  NullForceFunction none;
  CHECK_THROWS(engine.integrate(0, none));
  const auto before = engine.get_particle_data();
  const auto r = engine.integrate(1, none);
  CHECK_FALSE(r.terminated);
  CHECK(r.slices_completed == 1);
  const auto after = engine.get_particle_data();
  for (std::size_t i = 0; i < before.size(); ++i) {
    CHECK(after[i].pos == before[i].pos);
    CHECK(after[i].director == before[i].director);
  }
  CHECK(engine.time() == doctest::Approx(0.01));
}

TEST_CASE("deterministic drift of one step") {
  LocalEngine engine(quiet_params(3), {particle(0, Vec3(10, 10, 10))}, {}, 1);
  Action push;
  push.force = 2.0;
  auto ff = constant(push);
  engine.integrate(1, ff);
  const Colloid c = engine.get_particle_data().front();
  CHECK((c.pos - Vec3(10.02, 10, 10)).norm() < 1e-12);
  // velocity is the finite difference of the last step
  CHECK((c.velocity - Vec3(2, 0, 0)).norm() < 1e-9);
}

TEST_CASE("step_translation drift term") {
  SimParams p = quiet_params(3);
  p.gamma_t = 2.0;
  p.dt = 0.1;
  Colloid c = particle(0, Vec3(1, 1, 1), Vec3::UnitY());
  Action a;
  a.force = 1.0;
  RngStream rng(0, 0);
  CHECK((step_translation(c, a, p, Vec3::Zero(), rng) - Vec3(1, 1.05, 1)).norm() < 1e-15);
  CHECK(step_translation(c, Action{}, p, Vec3::Zero(), rng) == c.pos);
}

TEST_CASE("step_translation noise variance") {
  SimParams p = quiet_params(3);
  p.kT = 1.0;
  p.dt = 0.01;
  const Colloid c = particle(0, Vec3::Zero());
  RngStream rng(3, 4);
  const int n = 100000;
  double sq = 0, sum = 0;
  for (int i = 0; i < n; ++i) {
    const double dx = step_translation(c, Action{}, p, Vec3::Zero(), rng).x();
    sum += dx;
    sq += dx * dx;
  }
  const double var = sq / n - (sum / n) * (sum / n);
  const double expected = 2.0 * p.kT * p.dt / p.gamma_t;
  CHECK(std::abs(var - expected) < 3.0 * expected * std::sqrt(2.0 / n));
}

TEST_CASE("step_rotation") {
  SimParams p = quiet_params(2);
  const Colloid c = particle(0, Vec3::Zero(), Vec3::UnitX());
  RngStream rng(0, 0);
  CHECK(step_rotation(c, Action{}, p, rng) == Vec3::UnitX());

  Action turn;
  turn.torque = Vec3(0, 0, p.gamma_r * std::numbers::pi / (2 * p.dt));
  CHECK((step_rotation(c, turn, p, rng) - Vec3::UnitY()).norm() < 1e-12);

  Action steer;
  steer.torque = Vec3(0, 0, 5);
  steer.new_direction = Vec3(0, -1, 0);
  CHECK(step_rotation(c, steer, p, rng) == Vec3(0, -1, 0));

  Action bad;
  bad.new_direction = Vec3::Zero();
  CHECK_THROWS(step_rotation(c, bad, p, rng));
}

TEST_CASE("3D rotational noise keeps unit directors and decorrelates at 2 D_r") {
  SimParams p = quiet_params(3);
  p.kT = 1.0;
  p.gamma_r = 1.0;
  p.dt = 1e-3;
  std::vector<Colloid> cs;
  for (int i = 0; i < 2000; ++i) cs.push_back(particle(i, Vec3(50, 50, 50), Vec3::UnitZ()));
  LocalEngine engine(p, cs, {}, 77);
  NullForceFunction none;
  engine.integrate(200, none);
  double corr = 0;
  for (const auto& c : engine.get_particle_data()) {
    REQUIRE(std::abs(c.director.norm() - 1.0) < 1e-9);
    corr += c.director.z();
  }
  corr /= 2000.0;
  // exp(-2 * 0.2) = 0.670; sampling error ~ 0.01
  CHECK(corr == doctest::Approx(std::exp(-0.4)).epsilon(0.05));
}

TEST_CASE("wca force") {
  const double cutoff = std::pow(2.0, 1.0 / 6.0);
  CHECK(wca_force_magnitude(cutoff, 1.0, 1.0) < 1e-9);
  CHECK(wca_pair_force(Vec3(3, 0, 0), 1.0, 1.0).norm() == 0.0);
  CHECK(wca_force_magnitude(1.0, 1.0, 1.0) == doctest::Approx(24.0));
  CHECK(wca_force_magnitude(2.0, 2.0, 1.0) == doctest::Approx(12.0));

  // compare with a central difference of the potential
  auto potential = [](double r) {
    const double s6 = std::pow(1.0 / r, 6);
    return 4.0 * (s6 * s6 - s6) + 1.0;
  };
  for (double r : {0.9, 1.0, 1.05, 1.1}) {
    const double h = 1e-6;
    const double fd = -(potential(r + h) - potential(r - h)) / (2 * h);
    CHECK(wca_force_magnitude(r, 1.0, 1.0) == doctest::Approx(fd).epsilon(1e-6));
  }

  // repulsive: force on i points away from j
  const Vec3 sep(0.5, 0.7, 0.1);
  CHECK(wca_pair_force(sep, 1.0, 1.0).dot(sep) < 0.0);

  std::size_t overlaps = 0;
  const Vec3 f = wca_pair_force(Vec3(1e-9, 0, 0), 1.0, 1.0, &overlaps);
  CHECK(overlaps == 1);
  CHECK(f.allFinite());
}

TEST_CASE("pair forces conserve momentum") {
  SimParams p = quiet_params(2);
  p.box = Vec3(5, 5, 5);
  InteractionConfig ic;
  ic.enabled = true;
  std::vector<Colloid> cs;
  RngStream rng(8, 8);
  for (int i = 0; i < 30; ++i) cs.push_back(particle(i, Vec3(5 * rng.next_uniform(), 5 * rng.next_uniform(), 0)));
  const auto forces = interaction_forces(cs, p, ic);
  Vec3 total = Vec3::Zero();
  double largest = 0;
  for (const auto& f : forces) {
    total += f;
    largest = std::max(largest, f.norm());
  }
  CHECK(largest > 0.0);
  CHECK(total.norm() <= 1e-9 * std::max(1.0, largest));

  // displacement sum of one kT=0 step equals dt/gamma * total force
  LocalEngine engine(p, cs, ic, 3);
  NullForceFunction none;
  Vec3 before = Vec3::Zero();
  for (const auto& c : engine.get_particle_data()) before += c.pos;
  engine.advance_slice(std::vector<Action>(cs.size()));
  Vec3 moved = Vec3::Zero();
  for (const auto& c : engine.get_particle_data()) moved += c.velocity * p.dt;
  CHECK(moved.norm() <= 1e-9 * std::max(1.0, largest));
}

TEST_CASE("cardinality and blow-up errors") {
  SimParams p = quiet_params(2);
  LocalEngine engine(p, {particle(0, Vec3(1, 1, 0)), particle(1, Vec3(2, 2, 0))}, {}, 1);
  LambdaForceFunction short_list([](const std::vector<Colloid>&) { return std::vector<Action>(1); });
  CHECK_THROWS_WITH(engine.integrate(1, short_list), doctest::Contains("action/colloid cardinality"));

  Action huge;
  huge.force = std::numeric_limits<double>::infinity();
  auto ff = constant(huge);
  try {
    engine.integrate(1, ff);
    FAIL("expected a blow-up");
  } catch (const NumericalBlowUp& e) {
    CHECK(std::string(e.what()).find("numerical blow-up") != std::string::npos);
    CHECK(e.step() == 0);
  }
}

TEST_CASE("kill switch stops integration before the actions apply") {
  struct Killer : ForceFunction {
    int calls = 0;
    std::vector<Action> calc_action(const std::vector<Colloid>& cs) override {
      ++calls;
      Action a;
      a.force = 1.0;
      return std::vector<Action>(cs.size(), a);
    }
    bool kill_switch() const override { return calls >= 3; }
  } killer;
  LocalEngine engine(quiet_params(2), {particle(0, Vec3(1, 1, 0))}, {}, 1);
  const auto r = engine.integrate(10, killer);
  CHECK(r.terminated);
  CHECK(r.slices_completed == 2);
  CHECK(engine.get_particle_data().front().pos.x() == doctest::Approx(1.02));
}

TEST_CASE("snapshots are deep copies and runs are reproducible") {
  SimParams p = quiet_params(2);
  p.kT = 1.0;
  p.boundary = Boundary::reflecting;
  p.box = Vec3(3, 3, 3);
  const auto cs = place_random(20, 0, p, Vec3::Zero(), Vec3(3, 3, 0), 9);
  LocalEngine a(p, cs, {}, 5), b(p, cs, {}, 5);
  auto snap = a.get_particle_data();
  snap[0].pos.x() = 1e6;
  CHECK(a.get_particle_data()[0].pos.x() != 1e6);

  NullForceFunction none;
  a.integrate(50, none);
  b.integrate(50, none);
  CHECK(a.get_particle_data() == b.get_particle_data());
  for (const auto& c : a.get_particle_data()) {
    CHECK(std::abs(c.director.norm() - 1.0) < 1e-9);
    for (int k = 0; k < 2; ++k) {
      CHECK(c.pos[k] >= 0.0);
      CHECK(c.pos[k] <= 3.0);
    }
  }

  LocalEngine other(p, cs, {}, 6);
  other.integrate(50, none);
  CHECK_FALSE(other.get_particle_data() == a.get_particle_data());
}

TEST_CASE("reflecting walls fold the position and flip the director") {
  SimParams p = quiet_params(2);
  p.boundary = Boundary::reflecting;
  p.box = Vec3(10, 10, 10);
  Vec3 pos(10.5, 3, 0), dir(1, 0, 0);
  apply_boundary(pos, dir, p);
  CHECK(pos.x() == doctest::Approx(9.5));
  CHECK(dir.x() == -1.0);

  p.boundary = Boundary::periodic;
  pos = Vec3(-0.5, 12, 0);
  apply_boundary(pos, dir, p);
  CHECK(pos.x() == doctest::Approx(9.5));
  CHECK(pos.y() == doctest::Approx(2.0));
}

TEST_CASE("adding a particle leaves other particles' noise unchanged") {
  SimParams p = quiet_params(2);
  p.kT = 1.0;
  std::vector<Colloid> cs{particle(0, Vec3(10, 10, 0)), particle(1, Vec3(20, 20, 0))};
  LocalEngine a(p, cs, {}, 12);
  cs.push_back(particle(2, Vec3(30, 30, 0)));
  LocalEngine b(p, cs, {}, 12);
  NullForceFunction none;
  a.integrate(5, none);
  b.integrate(5, none);
  CHECK(a.get_particle_data()[0] == b.get_particle_data()[0]);
  CHECK(a.get_particle_data()[1] == b.get_particle_data()[1]);
}

TEST_CASE("rigid rod turns as a body under an off-center push") {
  SimParams p = quiet_params(2);
  p.kT = 0.0;
  p.dt = 1e-3;
  InteractionConfig ic;
  ic.enabled = true;
  ic.rigid_types = {1};
  auto cs = place_rod(9, 1, Vec3(50, 50, 0), 8.0, 0.0, 0);
  // a pusher just below the right end of the rod
  cs.push_back(particle(100, Vec3(54.0, 49.2, 0), Vec3::UnitY(), 0));
  LocalEngine engine(p, cs, ic, 1);
  auto ff = LambdaForceFunction([](const std::vector<Colloid>& all) {
    std::vector<Action> out(all.size());
    for (std::size_t i = 0; i < all.size(); ++i)
      if (all[i].type == 0) out[i].force = 20.0;
    return out;
  });
  engine.integrate(300, ff);
  const auto after = engine.get_particle_data();
  const Vec3 axis = after[8].pos - after[0].pos;
  CHECK(axis.norm() == doctest::Approx(8.0).epsilon(1e-9));
  CHECK(std::atan2(axis.y(), axis.x()) > 0.0);
}

TEST_CASE("engine rejects invalid setup") {
  SimParams p = quiet_params(2);
  p.gamma_t = -1;
  CHECK_THROWS(LocalEngine(p, {particle(0, Vec3::Zero())}, {}, 0));
  CHECK_THROWS(LocalEngine(quiet_params(2), {particle(0, Vec3::Zero()), particle(0, Vec3::Ones())}, {}, 0));
}
