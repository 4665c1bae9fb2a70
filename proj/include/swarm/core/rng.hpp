#pragma once

#include <cstdint>

namespace swarm {

/// Purpose tags keep independent consumers of randomness on disjoint streams.
enum class StreamPurpose : std::uint64_t {
  translation = 1,
  rotation = 2,
  policy = 3,
  exploration = 4,
  placement = 5,
  init = 6,
  episode = 7,
};

std::uint64_t mix64(std::uint64_t x);

/// Derives a stream key from a particle/agent id and a purpose.
std::uint64_t stream_key(std::uint64_t id, StreamPurpose purpose);

/// Counter-based random stream: every draw is a pure function of
/// (seed, stream_id, counter). The mutable counter only serves the
/// convenience `next_*` calls.
class RngStream {
 public:
  RngStream() = default;
  RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t counter = 0);

  std::uint64_t bits_at(std::uint64_t counter) const;
  /// Uniform in the open interval (0, 1).
  double uniform_at(std::uint64_t counter) const;
  /// Standard normal via Box-Muller on counters 2c and 2c+1.
  double gaussian_at(std::uint64_t counter) const;

  double next_uniform() { return uniform_at(counter_++); }
  double next_gaussian() { return gaussian_at(counter_++); }
  std::uint64_t next_bits() { return bits_at(counter_++); }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  std::uint64_t counter() const { return counter_; }
  void set_counter(std::uint64_t c) { counter_ = c; }

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t stream_id_ = 0;
  std::uint64_t counter_ = 0;
  std::uint64_t key_ = 0;
};

/// Deterministic seed derivation, e.g. per-episode seeds from a run seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace swarm
