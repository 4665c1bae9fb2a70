// Acceptance criteria. One line per criterion; exit status is the number of failures.

#include "swarm/cli/runner.hpp"
#include "swarm/config/builder.hpp"
#include "swarm/config/experiment.hpp"
#include "swarm/control/actor_critic_agent.hpp"
#include "swarm/engine/local_engine.hpp"
#include "swarm/learn/estimators.hpp"
#include "swarm/learn/losses.hpp"
#include "swarm/learn/network.hpp"
#include "swarm/learn/optimizer.hpp"
#include "swarm/learn/rnd.hpp"
#include "swarm/learn/sampling.hpp"
#include "swarm/learn/update.hpp"
#include "swarm/objectives/task.hpp"
#include "swarm/orchestrate/persistence.hpp"
#include "swarm/remote/server.hpp"
#include "swarm/sensing/observable.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <thread>
#include <unistd.h>

using namespace swarm;
using namespace swarm::learn;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("swarm_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, RngStream& rng, double scale = 1.0) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = scale * (2 * rng.next_uniform() - 1);
  return m;
}

// least-squares slope of y against x, with intercept
double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

std::vector<Colloid> crowd(int n, const Vec3& at, int dim, RngStream& rng) {
  std::vector<Colloid> cs(n);
  for (int i = 0; i < n; ++i) {
    cs[i].id = i;
    cs[i].pos = at;
    Vec3 e(rng.next_gaussian(), rng.next_gaussian(), dim == 3 ? rng.next_gaussian() : 0.0);
    cs[i].director = e.normalized();
  }
  return cs;
}

// 1 ------------------------------------------------------------------------

Verdict translational_diffusion() {
  SimParams p;
  p.dim = 2;
  p.kT = 1.0;
  p.gamma_t = 1.0;
  p.dt = 1e-3;
  p.steps_per_slice = 100;
  p.box = Vec3(1e7, 1e7, 1e7);
  p.boundary = Boundary::reflecting;
  RngStream rng(1, 1);
  const Vec3 start(5e6, 5e6, 0);
  LocalEngine engine(p, crowd(10000, start, 2, rng), InteractionConfig{}, 2024);
  NullForceFunction idle;
  std::vector<double> t{0.0}, msd{0.0};
  for (int k = 0; k < 10; ++k) {
    engine.integrate(1, idle);
    double sum = 0;
    for (const auto& c : engine.get_particle_data()) sum += (c.pos - start).squaredNorm();
    t.push_back(engine.time());
    msd.push_back(sum / 10000);
  }
  const double slope = fitted_slope(t, msd);
  const double target = 2 * p.dim * p.kT / p.gamma_t;
  return {std::abs(slope - target) <= 0.05 * target, fmt("MSD slope %.4f, target %.1f +-5%%", slope, target)};
}

// 2 ------------------------------------------------------------------------

Verdict rotational_diffusion() {
  SimParams p;
  p.dim = 3;
  p.kT = 1.0;
  p.gamma_r = 1.0;
  p.dt = 1e-3;
  p.steps_per_slice = 50;
  p.box = Vec3(1e7, 1e7, 1e7);
  p.boundary = Boundary::reflecting;
  RngStream rng(2, 1);
  const auto initial = crowd(10000, Vec3(5e6, 5e6, 5e6), 3, rng);
  LocalEngine engine(p, initial, InteractionConfig{}, 77);
  NullForceFunction idle;
  std::vector<double> t{0.0}, log_corr{0.0};
  for (int k = 0; k < 10; ++k) {
    engine.integrate(1, idle);
    const auto now = engine.get_particle_data();
    double sum = 0;
    for (std::size_t i = 0; i < now.size(); ++i) sum += now[i].director.dot(initial[i].director);
    t.push_back(engine.time());
    log_corr.push_back(std::log(sum / now.size()));
  }
  const double rate = -fitted_slope(t, log_corr);
  const double target = 2 * p.kT / p.gamma_r;
  return {std::abs(rate - target) <= 0.05 * target, fmt("decay rate %.4f, target %.1f +-5%%", rate, target)};
}

// 3 ------------------------------------------------------------------------

Verdict active_drift() {
  double worst = 0;
  for (int dim : {2, 3}) {
    SimParams p;
    p.dim = dim;
    p.kT = 0.0;
    p.gamma_t = 2.5;
    p.dt = 0.01;
    p.steps_per_slice = 10;
    p.box = Vec3(1e4, 1e4, 1e4);
    p.boundary = Boundary::reflecting;
    const double v = 0.7;
    Colloid c;
    c.pos = Vec3(5000, 5000, dim == 3 ? 5000 : 0);
    c.director = dim == 3 ? Vec3(1, 2, 2) / 3.0 : Vec3(0.6, -0.8, 0);
    LocalEngine engine(p, {c}, InteractionConfig{}, 3);
    LambdaForceFunction push([&](const std::vector<Colloid>& cs) {
      std::vector<Action> a(cs.size());
      for (auto& x : a) x.force = v * p.gamma_t;
      return a;
    });
    const int slices = 100;
    engine.integrate(slices, push);
    const int n = slices * p.steps_per_slice;
    const Vec3 expected = c.pos + n * p.dt * v * c.director;
    worst = std::max(worst, (engine.get_particle_data()[0].pos - expected).norm());
  }
  return {worst <= 1e-9, fmt("max |r - r0 - n dt v e| = %.3g (2D and 3D)", worst)};
}

// 4 ------------------------------------------------------------------------

template <typename Eval>
double max_relative_error(const Eigen::VectorXd& theta, const Eigen::VectorXd& grad, Eval&& value_at) {
  const double h = 1e-5;
  double worst = 0;
  for (Eigen::Index k = 0; k < theta.size(); ++k) {
    Eigen::VectorXd tp = theta, tm = theta;
    tp[k] += h;
    tm[k] -= h;
    const double fd = (value_at(tp) - value_at(tm)) / (2 * h);
    worst = std::max(worst, std::abs(fd - grad[k]) / std::max({std::abs(fd), std::abs(grad[k]), 1e-6}));
  }
  return worst;
}

Verdict finite_differences() {
  RngStream rng(4, 4);
  double worst_vpg = 0, worst_ppo = 0, worst_critic = 0, worst_rnd = 0;
  for (int trial = 0; trial < 100; ++trial) {
    NetworkShape shape;
    shape.input_width = 3;
    shape.n_actions = 3;
    shape.hidden = trial % 3 == 0 ? std::vector<int>{12} : std::vector<int>{8, 6};
    shape.architecture = trial % 2 ? Architecture::shared_trunk : Architecture::disjoint;
    ActorCriticNet net(shape);
    net.initialize(rng);
    const Eigen::Index B = 6;
    const Eigen::MatrixXd x = random_matrix(B, 3, rng, 2.0);
    Eigen::VectorXi actions(B);
    for (Eigen::Index b = 0; b < B; ++b) actions[b] = std::min(2, static_cast<int>(rng.next_uniform() * 3));
    const Eigen::VectorXd adv = random_matrix(B, 1, rng).col(0);
    const Eigen::VectorXd old_lp =
        selected_log_probs<double>(net.forward(x).logits, actions) + random_matrix(B, 1, rng, 0.3).col(0);
    const Eigen::VectorXd returns = random_matrix(B, 1, rng, 3.0).col(0);

    const std::function<LossTerms<double>(const ActorCriticNet::Output&)> losses[] = {
        [&](const ActorCriticNet::Output& o) { return vpg_terms<double>(o.logits, actions, adv); },
        [&](const ActorCriticNet::Output& o) { return ppo_terms<double>(o.logits, actions, old_lp, adv, 0.2); },
        [&](const ActorCriticNet::Output& o) { return critic_terms<double>(o.values, returns, o.logits.cols()); },
    };
    double* worst[] = {&worst_vpg, &worst_ppo, &worst_critic};
    const Eigen::VectorXd theta = net.parameters();
    for (int l = 0; l < 3; ++l) {
      const auto g = gradients(net, x, losses[l]).gradient;
      ActorCriticNet probe = net;
      *worst[l] = std::max(*worst[l], max_relative_error(theta, g, [&](const Eigen::VectorXd& th) {
                             probe.set_parameters(th);
                             return losses[l](probe.forward(x)).value;
                           }));
    }

    RndConfig rc;
    rc.input_width = 3;
    rc.hidden = {10, 10};
    rc.embedding_width = 4;
    rc.seed = 1000 + trial;
    RandomNetworkDistillation rnd(rc);
    const Eigen::MatrixXd states = random_matrix(B, 3, rng, 2.0);
    const auto [value, grad] = rnd.loss_and_gradient(states);
    const Eigen::VectorXd phi = rnd.predictor().parameters();
    worst_rnd = std::max(worst_rnd, max_relative_error(phi, grad, [&](const Eigen::VectorXd& th) {
                           rnd.predictor().set_parameters(th);
                           return rnd.loss_and_gradient(states).first;
                         }));
    rnd.predictor().set_parameters(phi);
  }
  const double worst = std::max({worst_vpg, worst_ppo, worst_critic, worst_rnd});
  return {worst < 1e-4, fmt("max rel err vpg %.2g ppo %.2g critic %.2g rnd %.2g", worst_vpg, worst_ppo,
                            worst_critic, worst_rnd)};
}

// 5 ------------------------------------------------------------------------

Verdict estimators() {
  RngStream rng(5, 5);
  double err_returns = 0, err_gae1 = 0;
  bool exact_td = true;
  for (int ep = 0; ep < 1000; ++ep) {
    const int T = 1 + static_cast<int>(rng.next_uniform() * 200);
    const double gamma = ep % 10 == 0 ? 1.0 : rng.next_uniform();
    const Eigen::VectorXd r = random_matrix(T, 1, rng).col(0);
    const Eigen::VectorXd v = random_matrix(T, 1, rng, 5.0).col(0);

    const Eigen::VectorXd g = expected_returns<double>(r, gamma);
    for (int t = 0; t < T; ++t) {
      double direct = 0, discount = 1;
      for (int u = t; u < T; ++u) {
        direct += discount * r[u];
        discount *= gamma;
      }
      err_returns = std::max(err_returns, std::abs(direct - g[t]));
    }

    const Eigen::VectorXd a1 = advantages_gae<double>(r, v, gamma, 1.0, 0.0);
    err_gae1 = std::max(err_gae1, (a1 - (g - v)).cwiseAbs().maxCoeff());

    const Eigen::VectorXd a0 = advantages_gae<double>(r, v, gamma, 0.0, 0.0);
    for (int t = 0; t < T; ++t) {
      const double next = t + 1 < T ? v[t + 1] : 0.0;
      exact_td = exact_td && a0[t] == r[t] + gamma * next - v[t];
    }
  }
  return {err_returns <= 1e-12 && err_gae1 <= 1e-10 && exact_td,
          fmt("returns err %.2g, gae(1) err %.2g, gae(0) == td residual: %s", err_returns, err_gae1,
              exact_td ? "yes" : "no")};
}

// 6 ------------------------------------------------------------------------

Verdict samplers() {
  RngStream rng(6, 6);
  const Eigen::VectorXd logits = random_matrix(5, 1, rng, 2.0).col(0);
  const Eigen::VectorXd p = softmax<double>(logits.transpose()).row(0).transpose();
  double tv[2];
  int k = 0;
  for (Sampler s : {Sampler::categorical, Sampler::gumbel}) {
    RngStream draws(60 + k, 1);
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(5);
    const int n = 100000;
    for (int i = 0; i < n; ++i) counts[sample_action(logits, s, draws).index] += 1;
    tv[k++] = 0.5 * (counts / n - p).cwiseAbs().sum();
  }
  return {tv[0] < 0.01 && tv[1] < 0.01, fmt("TV categorical %.4f, gumbel %.4f", tv[0], tv[1])};
}

// 7 ------------------------------------------------------------------------

// Updates until P(optimal) > 0.95, or -1 after `budget` updates.
int bandit_updates(Algorithm algorithm, std::uint64_t seed, int budget) {
  const int optimal = 1;
  const Eigen::Index agents = 16;
  NetworkShape shape;
  shape.input_width = 1;
  shape.n_actions = 2;
  ActorCriticNet net(shape);
  RngStream init(seed, stream_key(0, StreamPurpose::init));
  net.initialize(init);
  UpdateConfig cfg;
  cfg.algorithm = algorithm;
  cfg.optimizer.learning_rate = 0.01;
  Optimizer opt(cfg.optimizer, net.parameter_count());
  RngStream rng(seed, stream_key(0, StreamPurpose::policy));
  const Eigen::MatrixXd obs = Eigen::MatrixXd::Ones(agents, 1);
  auto p_optimal = [&] { return softmax<double>(net.forward(obs.topRows(1)).logits)(0, optimal); };
  for (int u = 0; u < budget; ++u) {
    if (p_optimal() > 0.95) return u;
    TrajectoryBuffer b;
    const auto out = net.forward(obs);
    Eigen::VectorXi a(agents);
    Eigen::VectorXd lp(agents), r(agents);
    for (Eigen::Index i = 0; i < agents; ++i) {
      const auto s = sample_action(out.logits.row(i).transpose(), Sampler::categorical, rng);
      a[i] = s.index;
      lp[i] = s.log_prob;
      r[i] = s.index == optimal ? 1.0 : 0.0;
    }
    b.observables.push_back(obs);
    b.actions.push_back(a);
    b.log_probs.push_back(lp);
    b.values.push_back(out.values);
    b.rewards.push_back(r);
    b.intrinsic_rewards.push_back(Eigen::VectorXd::Zero(agents));
    b.explored.push_back(Eigen::Array<bool, Eigen::Dynamic, 1>::Constant(agents, false));
    b.final_observables = obs;
    update_policy(net, opt, b, cfg);
  }
  return p_optimal() > 0.95 ? budget : -1;
}

Verdict bandit() {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool pass = true;
  for (Algorithm alg : {Algorithm::vpg, Algorithm::ppo}) {
    detail += to_string(alg) + " updates";
    for (std::uint64_t seed : {1, 2, 3}) {
      const int n = bandit_updates(alg, seed, 200);
      pass = pass && n >= 0;
      detail += " " + (n >= 0 ? std::to_string(n) : std::string(">200"));
    }
    detail += "; ";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {pass && secs < 10, detail + fmt("%.2f s", secs)};
}

// 8 ------------------------------------------------------------------------

Verdict chemotaxis() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto config = config::load_experiment(SWARM_SOURCE_DIR "/configs/chemotaxis.toml");
  int passing = 0;
  std::string ratios;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    cli::RunOptions opts;
    opts.seed = seed;
    opts.output_root = scratch() / ("chemotaxis_" + std::to_string(seed));
    const auto report = cli::run_experiment(config, opts);
    bool complete = false;
    const auto rows = read_rewards(report.directory / "rewards.csv", &complete);
    double early = 0, late = 0;
    int n_late = 0;
    for (const auto& row : rows) {
      if (row.episode < 10) early += row.cum_reward;
      if (row.episode >= 89 && row.episode < 100) {
        late += row.cum_reward;
        ++n_late;
      }
    }
    const double ratio = complete && rows.size() == 100 && n_late > 0 ? (late / n_late) / (early / 10) : 0.0;
    passing += ratio > 3.0;
    ratios += fmt(" %.2f", ratio);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {passing >= 4 && secs < 600, fmt("late/early ratio per seed:%s; %d/5 above 3; %.1f s", ratios.c_str(),
                                          passing, secs)};
}

// 9 ------------------------------------------------------------------------

Verdict rnd_novelty() {
  const int repeats = 20;
  std::vector<double> diff;
  for (int rep = 0; rep < repeats; ++rep) {
    RndConfig cfg;
    cfg.input_width = 4;
    cfg.seed = 900 + rep;
    RandomNetworkDistillation rnd(cfg);
    RngStream rng(9, rep);
    const Eigen::MatrixXd trained = random_matrix(10, 4, rng);
    for (int s = 0; s < 500; ++s) rnd.train(trained, 0.05);
    const Eigen::MatrixXd held_out = random_matrix(100, 4, rng);
    diff.push_back(rnd.reward(held_out).mean() - rnd.reward(trained).mean());
  }
  const double mean = std::accumulate(diff.begin(), diff.end(), 0.0) / repeats;
  double ss = 0;
  for (double d : diff) ss += (d - mean) * (d - mean);
  const double t = mean / std::sqrt(ss / (repeats - 1) / repeats);
  const double critical = 1.729;  // t(0.95, 19)
  return {t > critical, fmt("paired t = %.2f over %d repeats (critical %.3f), mean gap %.3g", t, repeats, critical,
                            mean)};
}

// 10 -----------------------------------------------------------------------

Verdict exploration() {
  const double zeta0 = 0.7;
  const double T = 37.0;
  const double at_T = exploration_schedule(zeta0, 1.0, T, T);
  const double schedule_err = std::abs(at_T - zeta0 / std::exp(1.0));

  const int agents = 10;
  const int slices = 10000;
  auto observable = std::make_shared<PositionDirectorObservable>(Vec3(100, 100, 100), 2);
  auto task = std::make_shared<GradientTask>(std::make_shared<ConcentrationField>(), 1.0, true);
  NetworkShape shape;
  shape.input_width = static_cast<int>(observable->width());
  shape.n_actions = 4;
  auto net = std::make_shared<ActorCriticNet>(shape);
  RngStream init(10, 1);
  net->initialize(init);
  ActorCriticAgentConfig cfg;
  cfg.actions.assign(4, {"idle", Action{}});
  cfg.seed = 10;
  cfg.exploration = {0.8, 1.0, slices};
  ActorCriticAgent agent(cfg, observable, task, net);

  std::vector<Colloid> cs;
  std::vector<std::size_t> members;
  for (int i = 0; i < agents; ++i) {
    Colloid c;
    c.id = i;
    c.pos = Vec3(10 + 5 * i, 50, 0);
    cs.push_back(c);
    members.push_back(i);
  }
  double expected = 0, variance = 0, schedule_track = 0;
  for (int t = 0; t < slices; ++t) {
    const double zeta = 0.8 * std::exp(-1.0 * t / slices);
    schedule_track = std::max(schedule_track, std::abs(agent.exploration_probability() - zeta));
    expected += agents * zeta;
    variance += agents * zeta * (1 - zeta);
    agent.decide(cs, members);
  }
  double observed = 0;
  for (const auto& e : agent.buffer().explored) observed += e.count();
  const double z = (observed - expected) / std::sqrt(variance);
  return {schedule_err <= 1e-12 && schedule_track <= 1e-12 && std::abs(z) < 3,
          fmt("|zeta(T) - zeta0/e| = %.2g; %d decisions: explored %.0f vs %.1f expected (%.2f SE)", schedule_err,
              agents * slices, observed, expected, z)};
}

// 11 -----------------------------------------------------------------------

const std::string kRemoteBase = R"(
[system]
seed = 19
dim = 2
kT = 0.01
dt = 0.01
steps_per_slice = 5
box = [60.0, 60.0]
boundary = "reflecting"

[interactions]
enabled = true

[species.0]
count = 6
lower = [20.0, 20.0]
upper = [40.0, 40.0]

[species.1]
count = 4

[fields.food]
source = [30.0, 30.0]
width = 12.0

[agents.0]
kind = "actor_critic"

[agents.0.actions.forward]
force = 5.0

[agents.0.actions.turn]
torque = [0.0, 0.0, 5.0]

[agents.0.observables.sense]
kind = "concentration_change"
field = "food"
scale = 10.0

[agents.0.tasks.climb]
kind = "gradient"
field = "food"
scale = 10.0
)";

const std::string kRemoteTraining = R"(
[training]
mode = "continuous"
n_episodes = 4
episode_length = 25

[output]
directory = "run"
)";

const std::string kKillTask = R"(
[agents.0.tasks.stop]
kind = "kill_switch"
max_time = 3.0
)";

Verdict protocol_equivalence() {
  std::string detail;
  bool pass = true;
  for (bool kill : {false, true}) {
    const std::string text = kRemoteBase + (kill ? kKillTask : "") + kRemoteTraining;
    const auto local_cfg = config::parse_experiment(text);
    remote::RemoteServer server([&](std::uint64_t s) { return config::build_local_engine(local_cfg, s); }, 0,
                                remote::Address{"127.0.0.1", 0});
    std::thread serving([&] { server.serve(); });
    const auto remote_cfg = config::parse_experiment(text + "\n[engine]\nkind = \"remote\"\naddress = \"127.0.0.1:" +
                                                     std::to_string(server.port()) + "\"\n");
    const fs::path base = scratch() / (kill ? "loopback_kill" : "loopback");
    cli::RunOptions local_opts, remote_opts;
    local_opts.output_root = base / "local";
    remote_opts.output_root = base / "remote";
    const auto a = cli::run_experiment(local_cfg, local_opts);
    const auto b = cli::run_experiment(remote_cfg, remote_opts);
    server.stop();
    serving.join();

    const bool same_traj = slurp(a.directory / "trajectory.csv") == slurp(b.directory / "trajectory.csv");
    const bool same_rewards = slurp(a.directory / "rewards.csv") == slurp(b.directory / "rewards.csv");
    const bool killed_ok = a.result.killed == kill && b.result.killed == kill;
    pass = pass && same_traj && same_rewards && killed_ok && a.trajectory_rows > 0;
    detail += fmt("%s: trajectory %s, rewards %s, %d episodes; ", kill ? "with kill" : "no kill",
                  same_traj ? "identical" : "DIFFER", same_rewards ? "identical" : "DIFFER",
                  b.result.episodes_completed);
  }
  return {pass, detail};
}

// 12 -----------------------------------------------------------------------

Verdict determinism() {
  bool pass = true;
  std::string detail;
  for (const char* name : {"chemotaxis.toml", "passive_diffusion.toml"}) {
    const auto config = config::load_experiment(fs::path(SWARM_SOURCE_DIR "/configs") / name);
    std::string files[2][2];
    for (int run = 0; run < 2; ++run) {
      cli::RunOptions opts;
      opts.seed = 123;
      opts.output_root = scratch() / ("determinism_" + std::to_string(run));
      const auto report = cli::run_experiment(config, opts);
      files[run][0] = slurp(report.directory / "trajectory.csv");
      files[run][1] = slurp(report.directory / "rewards.csv");
    }
    const bool same = !files[0][0].empty() && files[0][0] == files[1][0] && files[0][1] == files[1][1];
    pass = pass && same;
    detail += std::string(name) + (same ? " identical; " : " DIFFER; ");
  }
  return {pass, detail};
}

// 13 -----------------------------------------------------------------------

Verdict team_average() {
  RngStream rng(13, 13);
  double worst = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_uniform() * 64);
    const Eigen::VectorXd r = random_matrix(n, 1, rng, 100.0).col(0);
    double sum = 0;
    for (int i = 0; i < n; ++i) sum += r[i];
    const double mean = sum / n;
    const Eigen::VectorXd shared = aggregate_rewards(r, RewardMode::team_average);
    for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(shared[i] - mean));
    if (shared.size() != n) worst = 1;
  }
  return {worst <= 1e-12, fmt("max |r_i - mean| = %.2g over 1000 vectors", worst)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Verdict()>> criteria[] = {
      {"translational diffusion", translational_diffusion},
      {"rotational diffusion", rotational_diffusion},
      {"active drift", active_drift},
      {"loss gradients vs finite differences", finite_differences},
      {"return and advantage estimators", estimators},
      {"action samplers", samplers},
      {"two-armed bandit", bandit},
      {"chemotaxis learning", chemotaxis},
      {"RND novelty", rnd_novelty},
      {"exploration schedule", exploration},
      {"loopback protocol equivalence", protocol_equivalence},
      {"run determinism", determinism},
      {"team-average rewards", team_average},
  };
  int failures = 0;
  int index = 1;
  for (const auto& [name, check] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2d %-38s %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", index++, name, v.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !v.pass;
  }
  std::error_code ec;
  fs::remove_all(scratch(), ec);
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
  return failures;
}
