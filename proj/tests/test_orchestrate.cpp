#include <doctest.h>

#include "swarm/control/lymburn.hpp"
#include "swarm/engine/local_engine.hpp"
#include "swarm/engine/placement.hpp"
#include "swarm/orchestrate/trainer.hpp"

#include <cmath>
#include <filesystem>
#include <map>

using namespace swarm;

namespace {

SimParams params(double kT = 0.0) {
  SimParams p;
  p.dim = 2;
  p.kT = kT;
  p.dt = 0.1;
  p.steps_per_slice = 1;
  p.box = Vec3(1000, 1000, 1000);
  p.boundary = Boundary::reflecting;
  return p;
}

std::vector<Colloid> line_of(int n, int type = 0, std::int64_t first_id = 0) {
  std::vector<Colloid> cs;
  for (int i = 0; i < n; ++i) {
    Colloid c;
    c.id = first_id + i;
    c.type = type;
    c.pos = Vec3(500, 480 + 10 * i, 0);
    cs.push_back(c);
  }
  return cs;
}

// Reward 1 per agent; kill once any member has passed x = line.
class FinishLine : public Task {
 public:
  explicit FinishLine(double line) : line_(line) {}

 protected:
  TaskOutput evaluate(const std::vector<Colloid>& cs, int species) override {
    const auto members = species_members(cs, species);
    bool kill = false;
    for (auto i : members) kill = kill || cs[i].pos.x() > line_;
    return {Eigen::VectorXd::Ones(static_cast<Eigen::Index>(members.size())), kill};
  }

 private:
  double line_;
};

// Counts computations since the last reset.
class Counter : public Observable {
 public:
  ObservableBatch compute(const std::vector<Colloid>& cs, int species) override {
    log.push_back(since_++);
    const auto n = static_cast<Eigen::Index>(species_members(cs, species).size());
    return {Eigen::MatrixXd::Zero(n, 1), {{"counter", 0, 1}}};
  }
  Eigen::Index width() const override { return 1; }
  std::string name() const override { return "counter"; }
  void reset() override { since_ = 0; }
  std::vector<int> log;

 private:
  int since_ = 0;
};

ActionDictionary forward_only() {
  Action a;
  a.force = 1.0;
  return {{"forward", a}};
}

ActionDictionary steering() {
  ActionDictionary d = forward_only();
  Action ccw, cw;
  ccw.torque = Vec3(0, 0, 2);
  cw.torque = Vec3(0, 0, -2);
  d.emplace_back("ccw", ccw);
  d.emplace_back("cw", cw);
  return d;
}

TrainableSpecies trainable(std::shared_ptr<Observable> obs, std::shared_ptr<Task> task, ActionDictionary actions,
                           std::uint64_t seed = 1) {
  learn::NetworkShape shape;
  shape.input_width = static_cast<int>(obs->width());
  shape.n_actions = static_cast<int>(actions.size());
  auto net = std::make_shared<learn::ActorCriticNet>(shape);
  RngStream init(seed, stream_key(0, StreamPurpose::init));
  net->initialize(init);
  ActorCriticAgentConfig cfg;
  cfg.actions = std::move(actions);
  cfg.seed = seed;
  cfg.exploration.episode_slices = 10;
  TrainableSpecies t;
  t.agent = std::make_shared<ActorCriticAgent>(cfg, obs, task, net);
  t.update.optimizer.learning_rate = 0.01;
  return t;
}

std::shared_ptr<ConcentrationField> food() {
  auto f = std::make_shared<ConcentrationField>();
  f->source = Vec3(520, 500, 0);
  f->width = 15.0;
  f->dim = 2;
  return f;
}

TrainRun run_of(TrainingMode mode, int episodes, int length, int reset_frequency = 1) {
  TrainRun r;
  r.mode = mode;
  r.n_episodes = episodes;
  r.episode_length = length;
  r.reset_frequency = reset_frequency;
  r.seed = 42;
  return r;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "swarm_orchestrate_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("zero episodes") {
  auto t = trainable(std::make_shared<PositionDirectorObservable>(params().box, 2), std::make_shared<FinishLine>(1e9),
                     forward_only());
  const auto before = t.agent->network().parameters();
  Trainer trainer({t}, {}, {}, run_of(TrainingMode::continuous, 0, 5));
  LocalEngine engine(params(), line_of(3), {}, 1);
  const auto result = trainer.continuous_training(engine);
  CHECK(result.history.empty());
  CHECK(result.episodes_completed == 0);
  CHECK(result.updates == std::vector<long>{0});
  CHECK(t.agent->network().parameters() == before);
}

TEST_CASE("classical-only system runs without updates") {
  LymburnParams lp;
  lp.home = Vec3(500, 500, 0);
  auto flock = std::make_shared<LymburnAgent>(0, lp, params());
  Trainer trainer({}, {flock}, {}, run_of(TrainingMode::continuous, 3, 4));
  LocalEngine engine(params(), line_of(4), {}, 1);
  const auto result = trainer.continuous_training(engine);
  CHECK(result.episodes_completed == 3);
  CHECK(result.history.empty());
  CHECK(result.updates.empty());
  CHECK(engine.time() == doctest::Approx(1.2));
}

TEST_CASE("kill during an episode ends continuous training") {
  // forward force 1 at gamma 1 moves x by 0.1 per slice, 0.5 per episode
  for (int k : {1, 3, 6}) {
    const double line = 500.0 + 0.5 * (k - 1) + 0.25;
    auto t = trainable(std::make_shared<PositionDirectorObservable>(params().box, 2),
                       std::make_shared<FinishLine>(line), forward_only());
    Trainer trainer({t}, {}, {}, run_of(TrainingMode::continuous, 10, 5));
    LocalEngine engine(params(), line_of(2), {}, 1);
    const auto result = trainer.continuous_training(engine);
    CHECK(result.killed);
    CHECK(result.history.size() == static_cast<std::size_t>(k));
    CHECK(result.updates == std::vector<long>{k});
  }
}

TEST_CASE("constant reward accumulates over the episode") {
  auto t = trainable(std::make_shared<PositionDirectorObservable>(params().box, 2), std::make_shared<FinishLine>(1e9),
                     forward_only());
  Trainer trainer({t}, {}, {}, run_of(TrainingMode::continuous, 2, 50));
  LocalEngine engine(params(), line_of(3), {}, 1);
  const auto result = trainer.continuous_training(engine);
  REQUIRE(result.history.size() == 2);
  for (const auto& s : result.history) {
    CHECK(s.cum_reward == 50.0);
    CHECK(s.mean_reward == 1.0);
    CHECK(s.slices == 50);
  }
  CHECK(result.updates == std::vector<long>{2});
}

TEST_CASE("record_episode validates its buffer") {
  TrajectoryBuffer empty;
  CHECK_THROWS(record_episode(empty, {}, 0, 0));
  TrajectoryBuffer b;
  for (int s = 0; s < 3; ++s) {
    b.observables.push_back(Eigen::MatrixXd::Zero(2, 1));
    b.actions.push_back(Eigen::VectorXi::Zero(2));
    b.log_probs.push_back(Eigen::VectorXd::Zero(2));
    b.values.push_back(Eigen::VectorXd::Zero(2));
    b.rewards.push_back(Eigen::Vector2d(1, 3));
    b.intrinsic_rewards.push_back(Eigen::VectorXd::Zero(2));
    b.explored.push_back(Eigen::Array<bool, Eigen::Dynamic, 1>::Constant(2, false));
  }
  const auto s = record_episode(b, {}, 4, 1);
  CHECK(s.cum_reward == 6.0);
  CHECK(s.mean_reward == 2.0);
  CHECK(s.episode == 4);
  b.rewards.pop_back();
  CHECK_THROWS(record_episode(b, {}, 0, 0));
}

TEST_CASE("episodic rebuild schedule") {
  auto run_with = [](int episodes, int reset_frequency, std::shared_ptr<Task> task) {
    auto t = trainable(std::make_shared<PositionDirectorObservable>(params().box, 2), task, forward_only());
    Trainer trainer({t}, {}, {}, run_of(TrainingMode::episodic, episodes, 5, reset_frequency));
    std::vector<std::uint64_t> seeds;
    const auto result = trainer.episodic_training([&](std::uint64_t seed) {
      seeds.push_back(seed);
      return std::make_unique<LocalEngine>(params(), line_of(2), InteractionConfig{}, seed);
    });
    CHECK(seeds.size() == result.builds.size());
    return result;
  };

  const auto every = run_with(6, 1, std::make_shared<FinishLine>(1e9));
  CHECK(every.builds == std::vector<int>{0, 1, 2, 3, 4, 5});
  CHECK(every.history.size() == 6);

  const auto semi = run_with(90, 30, std::make_shared<FinishLine>(1e9));
  CHECK(semi.builds == std::vector<int>{0, 30, 60});
  CHECK(semi.updates == std::vector<long>{90});

  // the kill line is reached in the 8th episode (index 7) after one build
  const auto killed = run_with(20, 30, std::make_shared<FinishLine>(500.0 + 0.5 * 7 + 0.25));
  CHECK(killed.killed);
  REQUIRE(killed.builds.size() >= 2);
  CHECK(killed.builds[0] == 0);
  CHECK(killed.builds[1] == 8);
  CHECK(killed.history.size() == 20);
}

TEST_CASE("episode seeds derive from the run seed") {
  auto t = trainable(std::make_shared<PositionDirectorObservable>(params().box, 2), std::make_shared<FinishLine>(1e9),
                     forward_only());
  Trainer trainer({t}, {}, {}, run_of(TrainingMode::episodic, 3, 2));
  std::vector<std::uint64_t> seeds;
  trainer.episodic_training([&](std::uint64_t seed) {
    seeds.push_back(seed);
    return std::make_unique<LocalEngine>(params(), line_of(2), InteractionConfig{}, seed);
  });
  CHECK(seeds == std::vector<std::uint64_t>{derive_seed(42, 0), derive_seed(42, 1), derive_seed(42, 2)});
}

TEST_CASE("factory failure names the episode") {
  auto t = trainable(std::make_shared<PositionDirectorObservable>(params().box, 2), std::make_shared<FinishLine>(1e9),
                     forward_only());
  Trainer trainer({t}, {}, {}, run_of(TrainingMode::episodic, 5, 2));
  int calls = 0;
  try {
    trainer.episodic_training([&](std::uint64_t seed) -> std::unique_ptr<Engine> {
      if (++calls == 3) throw Error("no more engines");
      return std::make_unique<LocalEngine>(params(), line_of(2), InteractionConfig{}, seed);
    });
    FAIL("expected a training error");
  } catch (const TrainingError& e) {
    CHECK(e.episode() == 2);
    CHECK(std::string(e.what()).find("no more engines") != std::string::npos);
  }
}

TEST_CASE("no history leaks across resets") {
  auto counter = std::make_shared<Counter>();
  auto t = trainable(counter, std::make_shared<FinishLine>(1e9), steering());
  auto agent = t.agent;
  Trainer trainer({t}, {}, {}, run_of(TrainingMode::episodic, 4, 4));
  trainer.episodic_training([&](std::uint64_t seed) {
    CHECK(agent->buffer().empty());
    return std::make_unique<LocalEngine>(params(), line_of(3), InteractionConfig{}, seed);
  });
  // per episode: four decisions then the closing observation
  std::vector<int> expected;
  for (int e = 0; e < 4; ++e)
    for (int i = 0; i <= 4; ++i) expected.push_back(i);
  CHECK(counter->log == expected);
}

TEST_CASE("training is deterministic") {
  auto once = [] {
    auto field = food();
    auto t = trainable(std::make_shared<ConcentrationChangeObservable>(field, 10.0),
                       std::make_shared<GradientTask>(field, 10.0), steering(), 7);
    Trainer trainer({t}, {}, {}, run_of(TrainingMode::episodic, 8, 10, 3));
    auto result = trainer.episodic_training([](std::uint64_t seed) {
      return std::make_unique<LocalEngine>(params(0.01), line_of(4), InteractionConfig{}, seed);
    });
    return std::make_pair(result.episode_rewards(), t.agent->network().parameters());
  };
  const auto a = once();
  const auto b = once();
  CHECK(a.first == b.first);
  CHECK(a.second == b.second);
}

TEST_CASE("reward summaries agree with the persisted trajectory") {
  const auto traj_path = scratch("trajectory.csv");
  const auto reward_path = scratch("rewards.csv");
  auto field = food();
  const double scale = 10.0;
  const int length = 6;
  TrainingResult result;
  {
    auto t = trainable(std::make_shared<ConcentrationChangeObservable>(field, scale),
                       std::make_shared<GradientTask>(field, scale, true), steering(), 3);
    Trainer trainer({t}, {}, {}, run_of(TrainingMode::continuous, 5, length));
    TrajectoryLog traj(traj_path);
    RewardLog rewards(reward_path);
    trainer.set_trajectory_log(&traj);
    trainer.set_reward_log(&rewards);
    LocalEngine engine(params(0.01), line_of(4), {}, 9);
    result = trainer.continuous_training(engine);
    traj.complete();
    rewards.complete();
  }

  bool complete = false;
  const auto persisted = read_rewards(reward_path, &complete);
  CHECK(complete);
  REQUIRE(persisted.size() == result.history.size());
  for (std::size_t e = 0; e < persisted.size(); ++e) {
    CHECK(persisted[e].cum_reward == result.history[e].cum_reward);
    CHECK(persisted[e].actor_loss == result.history[e].actor_loss);
    CHECK(persisted[e].entropy == result.history[e].entropy);
  }

  // signed concentration changes telescope: per agent, cum = scale (c_end - c_start)
  const auto rows = read_trajectory(traj_path, &complete);
  CHECK(complete);
  std::map<long, std::map<std::int64_t, Vec3>> by_slice;
  for (const auto& r : rows) by_slice[std::lround(r.time / 0.1)][r.id] = r.pos;
  for (int e = 0; e < 5; ++e) {
    const auto& start = by_slice.at(e * length);
    const auto& end = by_slice.at((e + 1) * length);
    double cum = 0.0;
    for (const auto& [id, pos] : start) cum += scale * (field->value(end.at(id)) - field->value(pos));
    cum /= static_cast<double>(start.size());
    CHECK(result.history[e].cum_reward == doctest::Approx(cum).epsilon(1e-9));
  }
  std::filesystem::remove_all(traj_path.parent_path());
}

TEST_CASE("interrupt stops between slices") {
  auto t = trainable(std::make_shared<PositionDirectorObservable>(params().box, 2), std::make_shared<FinishLine>(1e9),
                     forward_only());
  Trainer trainer({t}, {}, {}, run_of(TrainingMode::continuous, 5, 5));
  std::atomic<bool> flag{true};
  trainer.set_interrupt(&flag);
  LocalEngine engine(params(), line_of(2), {}, 1);
  const auto result = trainer.continuous_training(engine);
  CHECK(result.interrupted);
  CHECK(result.history.empty());
  CHECK(result.updates == std::vector<long>{0});
}

TEST_CASE("checkpoints are written and reloaded") {
  const auto dir = scratch("checkpoints");
  auto t = trainable(std::make_shared<PositionDirectorObservable>(params().box, 2), std::make_shared<FinishLine>(1e9),
                     steering());
  TrainRun run = run_of(TrainingMode::continuous, 4, 3);
  run.checkpoint_every = 2;
  Trainer trainer({t}, {}, {}, run);
  trainer.set_checkpoint_directory(dir);
  LocalEngine engine(params(), line_of(2), {}, 1);
  trainer.continuous_training(engine);
  const auto file = dir / "checkpoint_species_0.json";
  REQUIRE(std::filesystem::exists(file));

  auto fresh = trainable(std::make_shared<PositionDirectorObservable>(params().box, 2),
                         std::make_shared<FinishLine>(1e9), steering(), 99);
  Trainer again({fresh}, {}, {}, run_of(TrainingMode::continuous, 0, 3));
  again.load_checkpoint(0, file);
  CHECK(fresh.agent->network().parameters() == t.agent->network().parameters());
  CHECK_THROWS(again.load_checkpoint(5, file));
  std::filesystem::remove_all(dir.parent_path());
}
