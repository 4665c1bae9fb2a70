#include "swarm/remote/server.hpp"

#include <iostream>
#include <unordered_map>

namespace swarm::remote {

using namespace std::chrono_literals;

RemoteServer::RemoteServer(LocalEngineFactory factory, std::uint64_t default_seed, const Address& bind)
    : factory_(std::move(factory)), default_seed_(default_seed), listener_(bind) {
  if (!factory_) throw Error("remote server needs an engine factory");
}

void RemoteServer::serve(int max_sessions) {
  while (!stop_) {
    std::optional<Socket> socket = listener_.accept(100ms);
    if (!socket) continue;
    try {
      session(*socket);
    } catch (const std::exception& e) {
      std::cerr << "session ended: " << e.what() << '\n';
    }
    ++sessions_;
    if (max_sessions > 0 && sessions_ >= max_sessions) break;
  }
}

void RemoteServer::session(Socket& socket) {
  std::unique_ptr<LocalEngine> engine;
  bool greeted = false;
  bool awaiting_actions = false;
  auto reply = [&](const Json& j) { socket.send_line(serialize(j)); };
  auto ensure_engine = [&](std::uint64_t seed) {
    if (!engine) engine = factory_(seed);
    if (!engine) throw Error("engine factory returned nothing");
  };

  while (!stop_) {
    std::optional<std::string> line;
    try {
      line = socket.read_line(100ms);
    } catch (const Timeout&) {
      continue;
    }
    if (!line) return;

    Json msg;
    try {
      msg = parse_message(*line);
    } catch (const ProtocolError& e) {
      reply(make_error(e.what()));
      return;
    }
    const std::string type = msg["type"];

    if (!greeted) {
      if (type != "hello") {
        reply(make_error("protocol sequence violation"));
        return;
      }
      if (!msg.contains("protocol_version") || msg["protocol_version"] != kProtocolVersion) {
        reply(make_error("protocol version mismatch: server speaks " + std::to_string(kProtocolVersion)));
        return;
      }
      greeted = true;
      Json hello = make_message("hello");
      hello["protocol_version"] = kProtocolVersion;
      reply(hello);
      continue;
    }

    try {
      if (type == "config") {
        if (awaiting_actions) {
          reply(make_error("protocol sequence violation"));
          continue;
        }
        if (msg.contains("seed") && !msg["seed"].is_null()) {
          if (!msg["seed"].is_number_unsigned()) throw ProtocolError("seed must be a non-negative integer");
          engine.reset();
          ensure_engine(msg["seed"].get<std::uint64_t>());
        }
        ensure_engine(default_seed_);
        Json out = make_message("config");
        out["params"] = encode_params(engine->params());
        out["n_colloids"] = engine->get_particle_data().size();
        out["time"] = engine->time();
        reply(out);
      } else if (type == "state_request") {
        ensure_engine(default_seed_);
        reply(encode_state(engine->time(), engine->get_particle_data()));
        awaiting_actions = true;
      } else if (type == "actions") {
        if (!awaiting_actions) {
          reply(make_error("protocol sequence violation"));
          continue;
        }
        const auto decoded = decode_actions(msg);
        const std::vector<Colloid> colloids = engine->get_particle_data();
        std::unordered_map<std::int64_t, std::size_t> index;
        for (std::size_t i = 0; i < colloids.size(); ++i) index[colloids[i].id] = i;
        std::vector<Action> actions(colloids.size());
        std::vector<bool> seen(colloids.size(), false);
        bool bad = false;
        for (const auto& [id, action] : decoded) {
          const auto it = index.find(id);
          if (it == index.end()) {
            reply(make_error("unknown colloid id " + std::to_string(id)));
            bad = true;
            break;
          }
          if (seen[it->second]) {
            reply(make_error("duplicate action for colloid id " + std::to_string(id)));
            bad = true;
            break;
          }
          seen[it->second] = true;
          actions[it->second] = action;
        }
        if (bad) continue;
        if (decoded.size() != colloids.size()) {
          reply(make_error("action/colloid cardinality: got " + std::to_string(decoded.size()) + " actions for " +
                           std::to_string(colloids.size()) + " colloids"));
          continue;
        }
        try {
          engine->advance_slice(actions);
        } catch (const std::exception& e) {
          reply(make_error(e.what()));
          return;
        }
        awaiting_actions = false;
        Json ack = make_message("ack");
        ack["time"] = engine->time();
        reply(ack);
      } else if (type == "kill" || type == "bye") {
        reply(make_message("bye"));
        return;
      } else {
        reply(make_error("protocol sequence violation"));
      }
    } catch (const ProtocolError& e) {
      reply(make_error(e.what()));
    }
  }
}

}  // namespace swarm::remote
