#include "swarm/config/experiment.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace swarm::config {

const FieldSpec* ExperimentConfig::find_field(const std::string& name) const {
  for (const auto& f : fields)
    if (f.name == name) return &f;
  return nullptr;
}

const SpeciesSpec* ExperimentConfig::find_species(int type) const {
  for (const auto& s : species)
    if (s.type == type) return &s;
  return nullptr;
}

namespace {

/// Typed access to one section; remembers which keys were read so the
/// leftovers can be reported as unknown.
class Reader {
 public:
  explicit Reader(const Section& s) : s_(s), used_(s.entries.size(), false) {}

  const Entry* find(const std::string& key) {
    for (std::size_t i = 0; i < s_.entries.size(); ++i) {
      if (s_.entries[i].key == key) {
        used_[i] = true;
        return &s_.entries[i];
      }
    }
    return nullptr;
  }

  [[noreturn]] void fail(const Entry& e, const std::string& what) const {
    throw ConfigError(qualified(e.key) + ": " + what, e.line);
  }

  std::string qualified(const std::string& key) const { return s_.name() + "." + key; }

  double real(const std::string& key, double def) {
    const Entry* e = find(key);
    if (!e) return def;
    if (!e->value.is_number()) fail(*e, "expected a number");
    return e->value.number();
  }

  std::optional<double> optional_real(const std::string& key) {
    if (!find(key)) return std::nullopt;
    return real(key, 0.0);
  }

  std::int64_t integer(const std::string& key, std::int64_t def) {
    const Entry* e = find(key);
    if (!e) return def;
    if (e->value.kind != Value::Kind::integer) fail(*e, "expected an integer");
    return e->value.integer;
  }

  int small_integer(const std::string& key, int def) {
    const std::int64_t v = integer(key, def);
    if (v < -1000000000 || v > 1000000000) fail(*find(key), "integer out of range");
    return static_cast<int>(v);
  }

  bool boolean(const std::string& key, bool def) {
    const Entry* e = find(key);
    if (!e) return def;
    if (e->value.kind != Value::Kind::boolean) fail(*e, "expected true or false");
    return e->value.boolean;
  }

  std::string string(const std::string& key, const std::string& def) {
    const Entry* e = find(key);
    if (!e) return def;
    if (e->value.kind != Value::Kind::string) fail(*e, "expected a string");
    return e->value.string;
  }

  template <typename Convert>
  auto named(const std::string& key, decltype(std::declval<Convert>()(std::string())) def, Convert convert) {
    const Entry* e = find(key);
    if (!e) return def;
    if (e->value.kind != Value::Kind::string) fail(*e, "expected a string");
    try {
      return convert(e->value.string);
    } catch (const Error& err) {
      fail(*e, err.what());
    }
  }

  /// Two or three numbers; a missing z component is zero.
  std::optional<Vec3> vec(const std::string& key) {
    const Entry* e = find(key);
    if (!e) return std::nullopt;
    const Value& v = e->value;
    if (v.kind != Value::Kind::array || v.items.size() < 2 || v.items.size() > 3)
      fail(*e, "expected an array of 2 or 3 numbers");
    Vec3 out = Vec3::Zero();
    for (std::size_t k = 0; k < v.items.size(); ++k) {
      if (!v.items[k].is_number()) fail(*e, "expected an array of numbers");
      out[static_cast<Eigen::Index>(k)] = v.items[k].number();
    }
    return out;
  }

  std::vector<int> ints(const std::string& key, const std::vector<int>& def) {
    const Entry* e = find(key);
    if (!e) return def;
    if (e->value.kind != Value::Kind::array) fail(*e, "expected an array of integers");
    std::vector<int> out;
    for (const auto& item : e->value.items) {
      if (item.kind != Value::Kind::integer) fail(*e, "expected an array of integers");
      out.push_back(static_cast<int>(item.integer));
    }
    return out;
  }

  void finish() const {
    for (std::size_t i = 0; i < s_.entries.size(); ++i)
      if (!used_[i]) throw ConfigError("unknown key '" + qualified(s_.entries[i].key) + "'", s_.entries[i].line);
  }

 private:
  const Section& s_;
  std::vector<bool> used_;
};

int species_tag(const Section& s, std::size_t index) {
  const std::string& text = s.path.at(index);
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used == text.size() && v >= 0) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("[" + s.name() + "]: species tag must be a non-negative integer", s.line);
}

void read_system(Reader& r, ExperimentConfig& c) {
  const std::int64_t seed = r.integer("seed", 0);
  if (seed < 0) throw ConfigError(r.qualified("seed") + ": must be non-negative", r.find("seed")->line);
  c.seed = static_cast<std::uint64_t>(seed);
  SimParams& p = c.params;
  p.dim = r.small_integer("dim", p.dim);
  p.gamma_t = r.real("gamma_t", p.gamma_t);
  p.gamma_r = r.real("gamma_r", p.gamma_r);
  p.kT = r.real("kT", p.kT);
  p.dt = r.real("dt", p.dt);
  p.steps_per_slice = r.small_integer("steps_per_slice", p.steps_per_slice);
  if (auto box = r.vec("box")) p.box = *box;
  p.boundary = r.named("boundary", p.boundary, boundary_from_string);
  r.finish();
}

void read_interactions(Reader& r, ExperimentConfig& c) {
  c.interactions.enabled = r.boolean("enabled", c.interactions.enabled);
  c.interactions.sigma = r.real("sigma", c.interactions.sigma);
  c.interactions.epsilon = r.real("epsilon", c.interactions.epsilon);
  r.finish();
}

SpeciesSpec read_species(Reader& r, int type) {
  SpeciesSpec s;
  s.type = type;
  s.count = r.small_integer("count", s.count);
  s.placement = r.string("placement", s.placement);
  s.lower = r.vec("lower");
  s.upper = r.vec("upper");
  if (auto v = r.vec("center")) s.center = *v;
  s.length = r.real("length", s.length);
  s.angle = r.real("angle", s.angle);
  s.rigid = r.boolean("rigid", s.rigid);
  r.finish();
  return s;
}

FieldSpec read_field(Reader& r, const std::string& name) {
  FieldSpec f;
  f.name = name;
  if (auto v = r.vec("source")) f.field.source = *v;
  f.field.decay = r.named("decay", f.field.decay, field_decay_from_string);
  f.field.amplitude = r.real("amplitude", f.field.amplitude);
  f.field.width = r.real("width", f.field.width);
  r.finish();
  return f;
}

void read_agent(Reader& r, AgentSpec& a) {
  a.kind = r.string("kind", a.kind);
  if (a.kind == "actor_critic") {
    a.hidden = r.ints("hidden", a.hidden);
    a.architecture = r.named("architecture", a.architecture, learn::architecture_from_string);
    a.sampler = r.named("sampler", a.sampler, learn::sampler_from_string);
    a.reward_mode = r.named("reward_mode", a.reward_mode, reward_mode_from_string);
    a.zeta0 = r.real("zeta0", a.zeta0);
    a.decay = r.real("decay", a.decay);
    a.intrinsic = r.boolean("intrinsic", a.intrinsic);
    a.rnd_hidden = r.ints("rnd_hidden", a.rnd_hidden);
    a.rnd_embedding = r.small_integer("rnd_embedding", a.rnd_embedding);
    a.rnd_learning_rate = r.real("rnd_learning_rate", a.rnd_learning_rate);
    a.load_checkpoint = r.string("load_checkpoint", a.load_checkpoint);
  } else if (a.kind == "lymburn") {
    LymburnParams& l = a.lymburn;
    l.a_align = r.real("a_align", l.a_align);
    l.a_repulse = r.real("a_repulse", l.a_repulse);
    l.a_attract = r.real("a_attract", l.a_attract);
    l.a_home = r.real("a_home", l.a_home);
    l.r_sense = r.optional_real("r_sense");
    l.r_repulse = r.optional_real("r_repulse");
    l.f_max = r.real("f_max", l.f_max);
    if (auto v = r.vec("home")) l.home = *v;
  } else {
    throw ConfigError(r.qualified("kind") + ": unknown agent kind '" + a.kind + "'", r.find("kind")->line);
  }
  r.finish();
}

std::pair<std::string, Action> read_action(Reader& r, const std::string& name) {
  Action a;
  a.force = r.real("force", 0.0);
  if (auto v = r.vec("torque")) a.torque = *v;
  a.new_direction = r.vec("new_direction");
  r.finish();
  return {name, a};
}

ObservableSpec read_observable(Reader& r, const std::string& name) {
  ObservableSpec o;
  o.name = name;
  o.kind = r.string("kind", o.kind);
  if (o.kind == "concentration_change") {
    o.field = r.string("field", "");
    o.scale = r.real("scale", o.scale);
  } else if (o.kind == "vision_cones") {
    o.vision.n_cones = r.small_integer("n_cones", o.vision.n_cones);
    o.cone_radius = r.optional_real("radius");
    o.vision.observed_types = r.ints("observed_types", o.vision.observed_types);
    o.vision.field_of_view = r.real("field_of_view", o.vision.field_of_view);
    o.vision.normalization = r.real("normalization", o.vision.normalization);
  } else if (o.kind != "position_director") {
    throw ConfigError(r.qualified("kind") + ": unknown observable kind '" + o.kind + "'", r.find("kind")->line);
  }
  r.finish();
  return o;
}

TaskSpec read_task(Reader& r, const std::string& name) {
  TaskSpec t;
  t.name = name;
  t.kind = r.string("kind", t.kind);
  t.weight = r.real("weight", t.weight);
  if (t.kind == "gradient") {
    t.field = r.string("field", "");
    t.scale = r.real("scale", t.scale);
    t.signed_change = r.boolean("signed", t.signed_change);
  } else if (t.kind == "rotate_rod") {
    t.rod_type = r.small_integer("rod_type", t.rod_type);
    t.scale = r.real("scale", t.scale);
    t.sense = r.real("sense", t.sense);
  } else if (t.kind == "kill_switch") {
    t.max_time = r.real("max_time", t.max_time);
    t.safe_lower = r.vec("safe_lower");
    t.safe_upper = r.vec("safe_upper");
    t.success_threshold = r.optional_real("success_threshold");
    t.field = r.string("field", "");
  } else {
    throw ConfigError(r.qualified("kind") + ": unknown task kind '" + t.kind + "'", r.find("kind")->line);
  }
  r.finish();
  return t;
}

void read_training(Reader& r, TrainingSpec& t) {
  t.mode = r.string("mode", t.mode);
  t.n_episodes = r.small_integer("n_episodes", t.n_episodes);
  t.episode_length = r.small_integer("episode_length", t.episode_length);
  t.reset_frequency = r.small_integer("reset_frequency", t.reset_frequency);
  t.slices = r.small_integer("slices", t.slices);
  learn::UpdateConfig& u = t.update;
  u.algorithm = r.named("algorithm", u.algorithm, learn::algorithm_from_string);
  u.returns = r.named("returns", u.returns, learn::returns_from_string);
  u.gamma = r.real("gamma", u.gamma);
  u.lambda = r.real("lambda", u.lambda);
  u.clip = r.real("clip", u.clip);
  u.epochs = r.small_integer("epochs", u.epochs);
  u.normalize_advantages = r.boolean("normalize_advantages", u.normalize_advantages);
  u.entropy_coef = r.real("entropy_coef", u.entropy_coef);
  u.value_coef = r.real("value_coef", u.value_coef);
  u.bootstrap_truncated = r.boolean("bootstrap_truncated", u.bootstrap_truncated);
  u.intrinsic_beta = r.real("intrinsic_beta", u.intrinsic_beta);
  u.exclude_explored = r.boolean("exclude_explored", u.exclude_explored);
  u.optimizer.kind = r.named("optimizer", u.optimizer.kind, learn::optimizer_from_string);
  u.optimizer.learning_rate = r.real("learning_rate", u.optimizer.learning_rate);
  u.optimizer.beta1 = r.real("beta1", u.optimizer.beta1);
  u.optimizer.beta2 = r.real("beta2", u.optimizer.beta2);
  u.optimizer.epsilon = r.real("epsilon", u.optimizer.epsilon);
  r.finish();
}

void read_engine(Reader& r, EngineSpec& e) {
  e.kind = r.string("kind", e.kind);
  e.address = r.string("address", e.address);
  e.timeout = r.real("timeout", e.timeout);
  r.finish();
}

void read_output(Reader& r, OutputSpec& o) {
  o.directory = r.string("directory", o.directory);
  o.trajectory = r.boolean("trajectory", o.trajectory);
  o.trajectory_every = r.small_integer("trajectory_every", o.trajectory_every);
  o.checkpoint_every = r.small_integer("checkpoint_every", o.checkpoint_every);
  r.finish();
}

AgentSpec& agent_for(ExperimentConfig& c, int species, std::map<int, bool>& declared) {
  for (auto& a : c.agents)
    if (a.species == species) return a;
  declared[species] = false;
  c.agents.push_back(AgentSpec{});
  c.agents.back().species = species;
  return c.agents.back();
}

}  // namespace

ExperimentConfig parse_experiment(const std::string& text) {
  const Document doc = parse_toml(text);
  ExperimentConfig c;
  std::map<int, bool> agent_declared;
  for (const Section& s : doc.sections) {
    Reader r(s);
    const auto& p = s.path;
    const std::string head = p.empty() ? "" : p[0];
    auto bad_section = [&]() { throw ConfigError("unknown section [" + s.name() + "]", s.line ? s.line : 1); };
    if (p.size() == 1 && head == "system") {
      read_system(r, c);
    } else if (p.size() == 1 && head == "interactions") {
      read_interactions(r, c);
    } else if (p.size() == 2 && head == "species") {
      c.species.push_back(read_species(r, species_tag(s, 1)));
    } else if (p.size() == 2 && head == "fields") {
      c.fields.push_back(read_field(r, p[1]));
    } else if (head == "agents" && p.size() >= 2) {
      AgentSpec& a = agent_for(c, species_tag(s, 1), agent_declared);
      if (p.size() == 2) {
        if (agent_declared[a.species]) bad_section();
        agent_declared[a.species] = true;
        read_agent(r, a);
      } else if (p.size() == 4 && p[2] == "actions") {
        a.actions.push_back(read_action(r, p[3]));
      } else if (p.size() == 4 && p[2] == "observables") {
        a.observables.push_back(read_observable(r, p[3]));
      } else if (p.size() == 4 && p[2] == "tasks") {
        a.tasks.push_back(read_task(r, p[3]));
      } else {
        bad_section();
      }
    } else if (p.size() == 1 && head == "training") {
      read_training(r, c.training);
    } else if (p.size() == 1 && head == "engine") {
      read_engine(r, c.engine);
    } else if (p.size() == 1 && head == "output") {
      read_output(r, c.output);
    } else if (p.empty()) {
      throw ConfigError("keys must belong to a section", s.entries.front().line);
    } else {
      bad_section();
    }
  }
  for (const auto& [species, declared] : agent_declared)
    if (!declared) throw ConfigError("agents." + std::to_string(species) + ": missing [agents." +
                                     std::to_string(species) + "] section");
  c.interactions.rigid_types.clear();
  for (const auto& s : c.species)
    if (s.rigid) c.interactions.rigid_types.push_back(s.type);
  validate_experiment(c);
  return c;
}

ExperimentConfig load_experiment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_experiment(ss.str());
}

namespace {

void require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw ConfigError(field + ": " + what);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void validate_experiment(const ExperimentConfig& c) {
  const SimParams& p = c.params;
  require(p.dim == 2 || p.dim == 3, "system.dim", "must be 2 or 3");
  require(finite_positive(p.gamma_t), "system.gamma_t", "must be strictly positive");
  require(finite_positive(p.gamma_r), "system.gamma_r", "must be strictly positive");
  require(finite_positive(p.dt), "system.dt", "must be strictly positive");
  require(std::isfinite(p.kT) && p.kT >= 0.0, "system.kT", "must be non-negative");
  require(p.steps_per_slice >= 1, "system.steps_per_slice", "must be at least 1");
  for (int k = 0; k < p.dim; ++k) require(finite_positive(p.box[k]), "system.box", "lengths must be strictly positive");
  if (c.interactions.enabled) {
    require(finite_positive(c.interactions.sigma), "interactions.sigma", "must be strictly positive");
    require(std::isfinite(c.interactions.epsilon) && c.interactions.epsilon >= 0.0, "interactions.epsilon",
            "must be non-negative");
  }

  require(!c.species.empty(), "species", "at least one [species.N] section is required");
  std::set<int> types;
  for (const auto& s : c.species) {
    const std::string f = "species." + std::to_string(s.type);
    require(types.insert(s.type).second, f, "declared twice");
    require(s.count >= 1, f + ".count", "must be at least 1");
    if (s.placement == "random") {
      const Vec3 lo = s.lower.value_or(Vec3::Zero());
      const Vec3 hi = s.upper.value_or(p.box);
      for (int k = 0; k < p.dim; ++k) {
        require(lo[k] >= 0.0 && hi[k] <= p.box[k], f, "placement region must lie inside the box");
        require(lo[k] <= hi[k], f, "lower corner must not exceed upper corner");
      }
    } else if (s.placement == "rod") {
      require(finite_positive(s.length), f + ".length", "must be strictly positive");
    } else {
      throw ConfigError(f + ".placement: unknown placement '" + s.placement + "'");
    }
  }

  std::set<std::string> names;
  for (const auto& fs : c.fields) {
    const std::string f = "fields." + fs.name;
    require(names.insert(fs.name).second, f, "declared twice");
    require(finite_positive(fs.field.amplitude), f + ".amplitude", "must be strictly positive");
    require(finite_positive(fs.field.width), f + ".width", "must be strictly positive");
  }

  auto check_field = [&](const std::string& name, const std::string& f) {
    require(!name.empty(), f + ".field", "a field name is required");
    require(c.find_field(name) != nullptr, f + ".field", "unknown field '" + name + "'");
  };

  std::set<int> agent_species;
  for (const auto& a : c.agents) {
    const std::string f = "agents." + std::to_string(a.species);
    require(agent_species.insert(a.species).second, f, "declared twice");
    require(c.find_species(a.species) != nullptr, f, "no species with tag " + std::to_string(a.species));
    if (a.kind == "lymburn") {
      require(a.actions.empty() && a.observables.empty() && a.tasks.empty(), f,
              "classical agents take no actions, observables or tasks");
      require(a.lymburn.f_max >= 0.0, f + ".f_max", "must be non-negative");
      if (a.lymburn.r_sense) require(finite_positive(*a.lymburn.r_sense), f + ".r_sense", "must be strictly positive");
      if (a.lymburn.r_repulse) require(*a.lymburn.r_repulse >= 0.0, f + ".r_repulse", "must be non-negative");
      continue;
    }
    require(!a.actions.empty(), f + ".actions", "at least one action is required");
    for (const auto& [name, action] : a.actions) {
      const std::string af = f + ".actions." + name;
      require(std::isfinite(action.force), af + ".force", "must be finite");
      require(action.torque.allFinite(), af + ".torque", "must be finite");
      if (action.new_direction) {
        const double norm = action.new_direction->norm();
        require(std::abs(norm - 1.0) <= 1e-9, af + ".new_direction",
                "must be a unit vector (norm " + std::to_string(norm) + ")");
      }
    }
    require(!a.observables.empty(), f + ".observables", "at least one observable is required");
    for (const auto& o : a.observables) {
      const std::string of = f + ".observables." + o.name;
      if (o.kind == "concentration_change") check_field(o.field, of);
      if (o.kind == "vision_cones") {
        require(o.vision.n_cones >= 1, of + ".n_cones", "must be at least 1");
        if (o.cone_radius) require(finite_positive(*o.cone_radius), of + ".radius", "must be strictly positive");
        require(finite_positive(o.vision.normalization), of + ".normalization", "must be strictly positive");
        for (int t : o.vision.observed_types)
          require(c.find_species(t) != nullptr, of + ".observed_types", "no species with tag " + std::to_string(t));
      }
    }
    require(!a.tasks.empty(), f + ".tasks", "at least one task is required");
    for (const auto& t : a.tasks) {
      const std::string tf = f + ".tasks." + t.name;
      require(std::isfinite(t.weight), tf + ".weight", "must be finite");
      if (t.kind == "gradient") check_field(t.field, tf);
      if (t.kind == "rotate_rod")
        require(c.find_species(t.rod_type) != nullptr, tf + ".rod_type", "no species with tag " + std::to_string(t.rod_type));
      if (t.kind == "kill_switch" && t.success_threshold) check_field(t.field, tf);
    }
    for (int h : a.hidden) require(h >= 1, f + ".hidden", "layer widths must be positive");
    require(!(a.architecture == learn::Architecture::shared_trunk && a.hidden.empty()), f + ".hidden",
            "a shared trunk needs at least one hidden layer");
    require(a.zeta0 >= 0.0 && a.zeta0 <= 1.0, f + ".zeta0", "must lie in [0, 1]");
    require(a.decay >= 0.0, f + ".decay", "must be non-negative");
    if (a.intrinsic) {
      require(a.rnd_embedding >= 1, f + ".rnd_embedding", "must be at least 1");
      for (int h : a.rnd_hidden) require(h >= 1, f + ".rnd_hidden", "layer widths must be positive");
      require(finite_positive(a.rnd_learning_rate), f + ".rnd_learning_rate", "must be strictly positive");
    }
  }

  const TrainingSpec& t = c.training;
  require(t.mode == "simulate" || t.mode == "continuous" || t.mode == "episodic", "training.mode",
          "must be simulate, continuous or episodic");
  require(t.n_episodes >= 0, "training.n_episodes", "must be non-negative");
  require(t.episode_length >= 1, "training.episode_length", "must be at least 1");
  require(t.reset_frequency >= 1, "training.reset_frequency", "must be at least 1");
  require(t.slices >= 1, "training.slices", "must be at least 1");
  try {
    t.update.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("training: ") + e.what());
  }

  require(c.engine.kind == "local" || c.engine.kind == "remote", "engine.kind", "must be local or remote");
  require(finite_positive(c.engine.timeout), "engine.timeout", "must be strictly positive");
  require(c.output.trajectory_every >= 1, "output.trajectory_every", "must be at least 1");
  require(c.output.checkpoint_every >= 0, "output.checkpoint_every", "must be non-negative");
}

namespace {

class Writer {
 public:
  void section(const std::string& name) {
    if (!out_.str().empty()) out_ << '\n';
    out_ << '[' << name << "]\n";
  }
  void put(const std::string& key, const Value& v) { out_ << key << " = " << format_value(v) << '\n'; }
  void real(const std::string& key, double v) { put(key, make_real(v)); }
  void integer(const std::string& key, std::int64_t v) { put(key, make_integer(v)); }
  void boolean(const std::string& key, bool v) { put(key, make_boolean(v)); }
  void string(const std::string& key, const std::string& v) { put(key, make_string(v)); }
  void vec(const std::string& key, const Vec3& v) {
    put(key, make_array({make_real(v[0]), make_real(v[1]), make_real(v[2])}));
  }
  void ints(const std::string& key, const std::vector<int>& v) {
    std::vector<Value> items;
    for (int x : v) items.push_back(make_integer(x));
    put(key, make_array(std::move(items)));
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

}  // namespace

std::string serialize_experiment(const ExperimentConfig& c) {
  Writer w;
  w.section("system");
  w.integer("seed", static_cast<std::int64_t>(c.seed));
  w.integer("dim", c.params.dim);
  w.real("gamma_t", c.params.gamma_t);
  w.real("gamma_r", c.params.gamma_r);
  w.real("kT", c.params.kT);
  w.real("dt", c.params.dt);
  w.integer("steps_per_slice", c.params.steps_per_slice);
  w.vec("box", c.params.box);
  w.string("boundary", to_string(c.params.boundary));

  w.section("interactions");
  w.boolean("enabled", c.interactions.enabled);
  w.real("sigma", c.interactions.sigma);
  w.real("epsilon", c.interactions.epsilon);

  for (const auto& s : c.species) {
    w.section("species." + std::to_string(s.type));
    w.integer("count", s.count);
    w.string("placement", s.placement);
    if (s.lower) w.vec("lower", *s.lower);
    if (s.upper) w.vec("upper", *s.upper);
    w.vec("center", s.center);
    w.real("length", s.length);
    w.real("angle", s.angle);
    w.boolean("rigid", s.rigid);
  }

  for (const auto& f : c.fields) {
    w.section("fields." + f.name);
    w.vec("source", f.field.source);
    w.string("decay", to_string(f.field.decay));
    w.real("amplitude", f.field.amplitude);
    w.real("width", f.field.width);
  }

  for (const auto& a : c.agents) {
    const std::string base = "agents." + std::to_string(a.species);
    w.section(base);
    w.string("kind", a.kind);
    if (a.kind == "lymburn") {
      const LymburnParams& l = a.lymburn;
      w.real("a_align", l.a_align);
      w.real("a_repulse", l.a_repulse);
      w.real("a_attract", l.a_attract);
      w.real("a_home", l.a_home);
      if (l.r_sense) w.real("r_sense", *l.r_sense);
      if (l.r_repulse) w.real("r_repulse", *l.r_repulse);
      w.real("f_max", l.f_max);
      w.vec("home", l.home);
      continue;
    }
    w.ints("hidden", a.hidden);
    w.string("architecture", learn::to_string(a.architecture));
    w.string("sampler", learn::to_string(a.sampler));
    w.string("reward_mode", to_string(a.reward_mode));
    w.real("zeta0", a.zeta0);
    w.real("decay", a.decay);
    w.boolean("intrinsic", a.intrinsic);
    w.ints("rnd_hidden", a.rnd_hidden);
    w.integer("rnd_embedding", a.rnd_embedding);
    w.real("rnd_learning_rate", a.rnd_learning_rate);
    w.string("load_checkpoint", a.load_checkpoint);
    for (const auto& [name, action] : a.actions) {
      w.section(base + ".actions." + name);
      w.real("force", action.force);
      w.vec("torque", action.torque);
      if (action.new_direction) w.vec("new_direction", *action.new_direction);
    }
    for (const auto& o : a.observables) {
      w.section(base + ".observables." + o.name);
      w.string("kind", o.kind);
      if (o.kind == "concentration_change") {
        w.string("field", o.field);
        w.real("scale", o.scale);
      } else if (o.kind == "vision_cones") {
        w.integer("n_cones", o.vision.n_cones);
        if (o.cone_radius) w.real("radius", *o.cone_radius);
        w.ints("observed_types", o.vision.observed_types);
        w.real("field_of_view", o.vision.field_of_view);
        w.real("normalization", o.vision.normalization);
      }
    }
    for (const auto& t : a.tasks) {
      w.section(base + ".tasks." + t.name);
      w.string("kind", t.kind);
      w.real("weight", t.weight);
      if (t.kind == "gradient") {
        w.string("field", t.field);
        w.real("scale", t.scale);
        w.boolean("signed", t.signed_change);
      } else if (t.kind == "rotate_rod") {
        w.integer("rod_type", t.rod_type);
        w.real("scale", t.scale);
        w.real("sense", t.sense);
      } else {
        w.real("max_time", t.max_time);
        if (t.safe_lower) w.vec("safe_lower", *t.safe_lower);
        if (t.safe_upper) w.vec("safe_upper", *t.safe_upper);
        if (t.success_threshold) w.real("success_threshold", *t.success_threshold);
        w.string("field", t.field);
      }
    }
  }

  const TrainingSpec& t = c.training;
  const learn::UpdateConfig& u = t.update;
  w.section("training");
  w.string("mode", t.mode);
  w.integer("n_episodes", t.n_episodes);
  w.integer("episode_length", t.episode_length);
  w.integer("reset_frequency", t.reset_frequency);
  w.integer("slices", t.slices);
  w.string("algorithm", learn::to_string(u.algorithm));
  w.string("returns", learn::to_string(u.returns));
  w.real("gamma", u.gamma);
  w.real("lambda", u.lambda);
  w.real("clip", u.clip);
  w.integer("epochs", u.epochs);
  w.boolean("normalize_advantages", u.normalize_advantages);
  w.real("entropy_coef", u.entropy_coef);
  w.real("value_coef", u.value_coef);
  w.boolean("bootstrap_truncated", u.bootstrap_truncated);
  w.real("intrinsic_beta", u.intrinsic_beta);
  w.boolean("exclude_explored", u.exclude_explored);
  w.string("optimizer", learn::to_string(u.optimizer.kind));
  w.real("learning_rate", u.optimizer.learning_rate);
  w.real("beta1", u.optimizer.beta1);
  w.real("beta2", u.optimizer.beta2);
  w.real("epsilon", u.optimizer.epsilon);

  w.section("engine");
  w.string("kind", c.engine.kind);
  w.string("address", c.engine.address);
  w.real("timeout", c.engine.timeout);

  w.section("output");
  w.string("directory", c.output.directory);
  w.boolean("trajectory", c.output.trajectory);
  w.integer("trajectory_every", c.output.trajectory_every);
  w.integer("checkpoint_every", c.output.checkpoint_every);
  return w.str();
}

}  // namespace swarm::config
