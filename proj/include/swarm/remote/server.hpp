#pragma once

#include "swarm/engine/local_engine.hpp"
#include "swarm/remote/protocol.hpp"
#include "swarm/remote/socket.hpp"

#include <atomic>
#include <functional>
#include <memory>

namespace swarm::remote {

using LocalEngineFactory = std::function<std::unique_ptr<LocalEngine>(std::uint64_t seed)>;

/// Reference server: exposes freshly built local engines over the wire,
/// one control connection at a time.
class RemoteServer {
 public:
  RemoteServer(LocalEngineFactory factory, std::uint64_t default_seed, const Address& bind);

  std::uint16_t port() const { return listener_.port(); }

  /// Accepts and serves connections until `stop()` or until
  /// `max_sessions` sessions have finished (0 = unlimited).
  void serve(int max_sessions = 0);
  void stop() { stop_ = true; }
  int sessions() const { return sessions_; }

 private:
  void session(Socket& socket);

  LocalEngineFactory factory_;
  std::uint64_t default_seed_;
  Listener listener_;
  std::atomic<bool> stop_{false};
  std::atomic<int> sessions_{0};
};

}  // namespace swarm::remote
