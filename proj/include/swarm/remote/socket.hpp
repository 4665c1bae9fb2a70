#pragma once

#include "swarm/core/error.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

namespace swarm::remote {

struct Address {
  std::string host = "127.0.0.1";
  std::uint16_t port = 7878;

  std::string str() const { return host + ":" + std::to_string(port); }
};

/// "host:port", "host" or ":port"; missing parts keep the defaults.
Address parse_address(const std::string& text, std::uint16_t default_port = 7878);

class Timeout : public Error {
 public:
  using Error::Error;
};

/// Connection-oriented TCP socket carrying newline-terminated lines.
class Socket {
 public:
  Socket() = default;
  explicit Socket(int fd) : fd_(fd) {}
  Socket(Socket&& other) noexcept;
  Socket& operator=(Socket&& other) noexcept;
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;
  ~Socket();

  static Socket connect(const Address& address, std::chrono::milliseconds timeout);

  bool open() const { return fd_ >= 0; }
  void close();

  void send_line(const std::string& line);
  /// Next line without its terminator; nullopt on orderly shutdown by the
  /// peer. Throws Timeout when nothing arrives in time.
  std::optional<std::string> read_line(std::chrono::milliseconds timeout);

 private:
  int fd_ = -1;
  std::string buffer_;
};

class Listener {
 public:
  explicit Listener(const Address& address);
  Listener(const Listener&) = delete;
  Listener& operator=(const Listener&) = delete;
  ~Listener();

  /// Bound port (useful when binding port 0).
  std::uint16_t port() const { return port_; }
  std::optional<Socket> accept(std::chrono::milliseconds timeout);

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

}  // namespace swarm::remote
