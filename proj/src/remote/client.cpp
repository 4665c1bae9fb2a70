#include "swarm/remote/client.hpp"

namespace swarm::remote {

RemoteEngine::RemoteEngine(const Address& address, ClientOptions options) : options_(options) {
  socket_ = Socket::connect(address, options_.timeout);
  Json hello = make_message("hello");
  hello["protocol_version"] = kProtocolVersion;
  send(hello);
  const Json reply = receive();
  if (reply["type"] != "hello") throw ProtocolError("expected hello, got " + reply["type"].get<std::string>());
  if (!reply.contains("protocol_version") || reply["protocol_version"] != kProtocolVersion)
    throw ProtocolError("protocol version mismatch");

  Json config = make_message("config");
  if (options_.seed) config["seed"] = *options_.seed;
  send(config);
  const Json params = receive();
  if (params["type"] != "config") throw ProtocolError("expected config, got " + params["type"].get<std::string>());
  if (!params.contains("params")) throw ProtocolError("config reply without params");
  params_ = decode_params(params["params"]);
  if (params.contains("time") && params["time"].is_number()) time_ = params["time"].get<double>();
}

RemoteEngine::~RemoteEngine() {
  if (!socket_.open()) return;
  try {
    socket_.send_line(serialize(make_message("bye")));
    socket_.read_line(std::chrono::milliseconds(1000));
  } catch (const std::exception&) {
  }
}

void RemoteEngine::send(const Json& message) const {
  socket_.send_line(serialize(message));
  ++sent_[message["type"].get<std::string>()];
}

Json RemoteEngine::receive() const {
  std::optional<std::string> line;
  try {
    line = socket_.read_line(options_.timeout);
  } catch (const Timeout&) {
    throw Error("remote environment unresponsive");
  }
  if (!line) {
    socket_.close();
    throw Error("remote environment closed the connection");
  }
  Json msg = parse_message(*line);
  const std::string type = msg["type"];
  ++received_[type];
  if (type == "error") {
    const std::string what = msg.contains("message") && msg["message"].is_string() ? msg["message"] : "unspecified";
    throw Error("remote environment error: " + what);
  }
  return msg;
}

void RemoteEngine::request_state() const {
  send(make_message("state_request"));
  const Json reply = receive();
  if (reply["type"] == "bye") {
    socket_.close();
    return;
  }
  if (reply["type"] != "state") throw ProtocolError("expected state, got " + reply["type"].get<std::string>());
  colloids_ = decode_state(reply, &time_);
  stale_ = false;
}

std::vector<Colloid> RemoteEngine::get_particle_data() const {
  if (stale_ && socket_.open()) request_state();
  return colloids_;
}

IntegrateResult RemoteEngine::integrate(int n_slices, ForceFunction& force_function) {
  if (n_slices < 1) throw Error("n_slices must be at least 1");
  IntegrateResult result;
  for (int s = 0; s < n_slices; ++s) {
    if (!socket_.open()) {
      result.terminated = true;
      return result;
    }
    request_state();
    if (!socket_.open()) {
      result.terminated = true;
      return result;
    }
    const std::vector<Action> actions = force_function.calc_action(colloids_);
    if (force_function.kill_switch()) {
      send(make_message("kill"));
      const Json reply = receive();
      if (reply["type"] != "bye") throw ProtocolError("expected bye after kill");
      socket_.close();
      result.terminated = true;
      return result;
    }
    if (actions.size() != colloids_.size()) {
      throw Error("action/colloid cardinality: got " + std::to_string(actions.size()) + " actions for " +
                  std::to_string(colloids_.size()) + " colloids");
    }
    send(encode_actions(colloids_, actions));
    const Json reply = receive();
    if (reply["type"] == "bye") {
      socket_.close();
      result.terminated = true;
      return result;
    }
    if (reply["type"] != "ack") throw ProtocolError("expected ack, got " + reply["type"].get<std::string>());
    if (reply.contains("time") && reply["time"].is_number()) time_ = reply["time"].get<double>();
    stale_ = true;
    ++result.slices_completed;
  }
  return result;
}

}  // namespace swarm::remote
