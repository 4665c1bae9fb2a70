#pragma once

#include "swarm/engine/engine.hpp"
#include "swarm/remote/protocol.hpp"
#include "swarm/remote/socket.hpp"

#include <chrono>
#include <map>
#include <optional>

namespace swarm::remote {

struct ClientOptions {
  std::chrono::milliseconds timeout{30000};
  /// Asks the server to build its environment from this seed.
  std::optional<std::uint64_t> seed;
};

/// Engine whose particles live on the other end of a TCP connection.
class RemoteEngine : public Engine {
 public:
  RemoteEngine(const Address& address, ClientOptions options = {});
  ~RemoteEngine() override;

  IntegrateResult integrate(int n_slices, ForceFunction& force_function) override;
  /// Last known state; refreshed from the server when stale.
  std::vector<Colloid> get_particle_data() const override;
  double time() const override { return time_; }
  const SimParams& params() const override { return params_; }

  bool closed() const { return !socket_.open(); }
  /// Messages sent and received, by type.
  const std::map<std::string, long>& sent() const { return sent_; }
  const std::map<std::string, long>& received() const { return received_; }

 private:
  void send(const Json& message) const;
  Json receive() const;
  void request_state() const;

  ClientOptions options_;
  mutable Socket socket_;
  SimParams params_;
  mutable double time_ = 0.0;
  mutable std::vector<Colloid> colloids_;
  mutable bool stale_ = true;
  mutable std::map<std::string, long> sent_;
  mutable std::map<std::string, long> received_;
};

}  // namespace swarm::remote
