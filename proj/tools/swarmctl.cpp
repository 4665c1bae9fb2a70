#include "swarm/cli/runner.hpp"
#include "swarm/config/builder.hpp"
#include "swarm/remote/server.hpp"
#include "swarm/remote/socket.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <iostream>

namespace {

std::atomic<bool> g_interrupt{false};
swarm::remote::RemoteServer* g_server = nullptr;

extern "C" void on_signal(int) {
  g_interrupt = true;
  if (g_server) g_server->stop();
}

std::optional<std::filesystem::path> output_root() {
  const char* root = std::getenv(swarm::cli::kOutputRootVariable);
  if (root && *root) return std::filesystem::path(root);
  return std::nullopt;
}

int cmd_run(const std::string& path, std::optional<std::uint64_t> seed) {
  const auto config = swarm::config::load_experiment(path);
  swarm::cli::RunOptions options;
  options.seed = seed;
  options.output_root = output_root();
  options.interrupt = &g_interrupt;
  const auto report = swarm::cli::run_experiment(config, options);
  const auto& r = report.result;
  std::cout << "output: " << report.directory.string() << '\n'
            << "episodes: " << r.episodes_completed << '\n'
            << "trajectory rows: " << report.trajectory_rows << '\n';
  if (r.killed) std::cout << "terminated by kill switch\n";
  if (r.interrupted) std::cout << "interrupted\n";
  return 0;
}

int cmd_validate(const std::string& path) {
  const auto config = swarm::config::load_experiment(path);
  // Building the agents checks observable and network widths too.
  try {
    swarm::config::build_agents(config, config.seed);
  } catch (const swarm::config::ConfigError&) {
    throw;
  } catch (const swarm::Error& e) {
    throw swarm::config::ConfigError(e.what());
  }
  if (config.engine.kind == "remote") {
    try {
      const auto address = swarm::remote::parse_address(config.engine.address);
      swarm::remote::Socket::connect(address, std::chrono::milliseconds(1000));
    } catch (const std::exception& e) {
      std::cerr << "warning: remote environment not reachable now (" << e.what() << ")\n";
    }
  }
  std::cout << "OK\n";
  return 0;
}

int cmd_serve(const std::string& path, const std::string& bind, std::optional<std::uint64_t> seed, int sessions) {
  const auto config = swarm::config::load_experiment(path);
  if (config.engine.kind != "local") throw swarm::config::ConfigError("engine.kind: serve needs a local engine");
  const auto address = swarm::remote::parse_address(bind);
  swarm::remote::RemoteServer server(
      [config](std::uint64_t s) { return swarm::config::build_local_engine(config, s); }, seed.value_or(config.seed),
      address);
  g_server = &server;
  std::cout << "listening on " << address.host << ':' << server.port() << std::endl;
  server.serve(sessions);
  g_server = nullptr;
  return 0;
}

int cmd_replay(const std::string& path, bool stats) {
  const auto s = swarm::cli::replay_stats(path);
  if (stats) {
    swarm::cli::print_stats(std::cout, s);
  } else {
    std::cout << s.rows << " rows, " << s.frames << " frames, " << s.particles << " particles\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Active particle simulation and swarm training"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  std::string config_path;
  auto* run = app.add_subcommand("run", "Run the simulation or training described by a config file");
  run->add_option("config", config_path, "Experiment config")->required();
  run->add_option("--seed", seed, "Override the config seed");

  auto* validate = app.add_subcommand("validate", "Check a config file without running it");
  validate->add_option("config", config_path, "Experiment config")->required();

  std::string bind = "127.0.0.1:7878";
  int sessions = 0;
  auto* serve = app.add_subcommand("serve", "Expose the configured local engine over TCP");
  serve->add_option("config", config_path, "Experiment config")->required();
  serve->add_option("--bind", bind, "Address to listen on (host:port)");
  serve->add_option("--seed", seed, "Default environment seed");
  serve->add_option("--sessions", sessions, "Exit after this many sessions (0 = never)");

  std::string trajectory;
  bool stats = false;
  auto* replay = app.add_subcommand("replay", "Summarize a trajectory file");
  replay->add_option("trajectory", trajectory, "trajectory.csv")->required();
  replay->add_flag("--stats", stats, "Print per-species statistics");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  try {
    if (*run) return cmd_run(config_path, seed);
    if (*validate) return cmd_validate(config_path);
    if (*serve) return cmd_serve(config_path, bind, seed, sessions);
    if (*replay) return cmd_replay(trajectory, stats);
  } catch (const swarm::config::ConfigError& e) {
    std::cerr << "invalid config: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
