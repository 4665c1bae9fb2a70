#include "swarm/config/builder.hpp"

#include "swarm/engine/placement.hpp"
#include "swarm/remote/client.hpp"

#include <algorithm>

namespace swarm::config {

std::vector<Colloid> initial_colloids(const ExperimentConfig& config, std::uint64_t seed) {
  std::vector<Colloid> out;
  std::int64_t next_id = 0;
  for (const auto& s : config.species) {
    std::vector<Colloid> group;
    if (s.placement == "rod") {
      group = place_rod(s.count, s.type, s.center, s.length, s.angle, next_id);
    } else {
      Vec3 upper = s.upper.value_or(config.params.box);
      if (config.params.dim == 2) upper.z() = 0.0;
      group = place_random(s.count, s.type, config.params, s.lower.value_or(Vec3::Zero()), upper, seed, next_id);
    }
    next_id += s.count;
    out.insert(out.end(), group.begin(), group.end());
  }
  return out;
}

std::unique_ptr<LocalEngine> build_local_engine(const ExperimentConfig& config, std::uint64_t seed) {
  return std::make_unique<LocalEngine>(config.params, initial_colloids(config, seed), config.interactions, seed);
}

EngineFactory build_engine_factory(const ExperimentConfig& config) {
  if (config.engine.kind == "remote") {
    const remote::Address address = remote::parse_address(config.engine.address, remote::kDefaultPort);
    const auto timeout = std::chrono::milliseconds(static_cast<long>(config.engine.timeout * 1000.0));
    return [address, timeout](std::uint64_t seed) -> std::unique_ptr<Engine> {
      remote::ClientOptions options;
      options.timeout = timeout;
      options.seed = seed;
      return std::make_unique<remote::RemoteEngine>(address, options);
    };
  }
  return [config](std::uint64_t seed) -> std::unique_ptr<Engine> { return build_local_engine(config, seed); };
}

std::shared_ptr<const ConcentrationField> resolve_field(const ExperimentConfig& config, const std::string& name) {
  const FieldSpec* spec = config.find_field(name);
  if (!spec) throw ConfigError("unknown field '" + name + "'");
  auto field = std::make_shared<ConcentrationField>(spec->field);
  field->box = config.params.box;
  field->boundary = config.params.boundary;
  field->dim = config.params.dim;
  return field;
}

namespace {

std::shared_ptr<Observable> build_observable(const ExperimentConfig& c, const ObservableSpec& o) {
  const SimParams& p = c.params;
  if (o.kind == "concentration_change")
    return std::make_shared<ConcentrationChangeObservable>(resolve_field(c, o.field), o.scale);
  if (o.kind == "vision_cones") {
    VisionConeConfig v = o.vision;
    v.radius = o.cone_radius.value_or(0.25 * p.box.head(p.dim).minCoeff());
    return std::make_shared<VisionConesObservable>(v, p.box, p.boundary, p.dim);
  }
  return std::make_shared<PositionDirectorObservable>(p.box, p.dim);
}

std::shared_ptr<Task> build_task(const ExperimentConfig& c, const TaskSpec& t) {
  const SimParams& p = c.params;
  if (t.kind == "gradient") return std::make_shared<GradientTask>(resolve_field(c, t.field), t.scale, t.signed_change);
  if (t.kind == "rotate_rod")
    return std::make_shared<RotateRodTask>(t.rod_type, t.scale, p.box, p.boundary, p.dim, t.sense);
  KillSwitchConfig k;
  k.max_time = t.max_time;
  k.safe_lower = t.safe_lower;
  k.safe_upper = t.safe_upper;
  k.success_threshold = t.success_threshold;
  if (!t.field.empty()) k.field = resolve_field(c, t.field);
  k.dim = p.dim;
  return std::make_shared<KillSwitchTask>(k, p.slice_duration());
}

}  // namespace

AgentSet build_agents(const ExperimentConfig& config, std::uint64_t seed) {
  AgentSet set;
  const int episode_slices =
      config.training.mode == "simulate" ? config.training.slices : config.training.episode_length;
  for (const auto& a : config.agents) {
    if (a.kind == "lymburn") {
      set.others.push_back(std::make_shared<LymburnAgent>(a.species, a.lymburn, config.params));
      continue;
    }
    std::vector<std::shared_ptr<Observable>> parts;
    for (const auto& o : a.observables) parts.push_back(build_observable(config, o));
    std::shared_ptr<Observable> observable =
        parts.size() == 1 ? parts.front() : std::make_shared<MultiSensing>(std::move(parts));

    std::vector<std::shared_ptr<Task>> tasks;
    std::vector<double> weights;
    for (const auto& t : a.tasks) {
      tasks.push_back(build_task(config, t));
      weights.push_back(t.weight);
    }
    std::shared_ptr<Task> task = tasks.size() == 1 && weights.front() == 1.0
                                     ? tasks.front()
                                     : std::make_shared<Multitasking>(std::move(tasks), std::move(weights));

    const std::uint64_t agent_seed = derive_seed(seed, static_cast<std::uint64_t>(a.species));
    learn::NetworkShape shape;
    shape.input_width = static_cast<int>(observable->width());
    shape.n_actions = static_cast<int>(a.actions.size());
    shape.hidden = a.hidden;
    shape.architecture = a.architecture;
    auto network = std::make_shared<learn::ActorCriticNet>(shape);
    RngStream init(agent_seed, stream_key(static_cast<std::uint64_t>(a.species), StreamPurpose::init));
    network->initialize(init);

    std::shared_ptr<learn::RandomNetworkDistillation> rnd;
    if (a.intrinsic) {
      learn::RndConfig rc;
      rc.input_width = shape.input_width;
      rc.hidden = a.rnd_hidden;
      rc.embedding_width = a.rnd_embedding;
      rc.learning_rate = a.rnd_learning_rate;
      rc.seed = derive_seed(agent_seed, 1);
      rnd = std::make_shared<learn::RandomNetworkDistillation>(rc);
    }

    ActorCriticAgentConfig ac;
    ac.species = a.species;
    ac.actions = a.actions;
    ac.sampler = a.sampler;
    ac.reward_mode = a.reward_mode;
    ac.exploration = ExplorationConfig{a.zeta0, a.decay, episode_slices};
    ac.seed = agent_seed;
    auto agent = std::make_shared<ActorCriticAgent>(ac, observable, task, network, rnd);

    TrainableSpecies ts;
    ts.agent = agent;
    ts.update = config.training.update;
    ts.update.sampler = a.sampler;
    set.trainable.push_back(ts);
  }
  for (const auto& s : config.species) {
    const bool controlled = std::any_of(config.agents.begin(), config.agents.end(),
                                        [&](const AgentSpec& a) { return a.species == s.type; });
    if (!controlled) set.passive.push_back(s.type);
  }
  return set;
}

}  // namespace swarm::config
