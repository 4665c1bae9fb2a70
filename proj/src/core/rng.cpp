#include "swarm/core/rng.hpp"

#include <cmath>
#include <numbers>

namespace swarm {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t stream_key(std::uint64_t id, StreamPurpose purpose) {
  return mix64(id * kGolden + 0x632be59bd9b4e019ULL) ^ mix64(static_cast<std::uint64_t>(purpose));
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t counter)
    : seed_(seed), stream_id_(stream_id), counter_(counter),
      key_(mix64(seed ^ mix64(stream_id + kGolden))) {}

// SplitMix64 evaluated at an arbitrary position of the sequence seeded by key_.
std::uint64_t RngStream::bits_at(std::uint64_t counter) const {
  return mix64(key_ + (counter + 1) * kGolden);
}

double RngStream::uniform_at(std::uint64_t counter) const {
  return (static_cast<double>(bits_at(counter) >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::gaussian_at(std::uint64_t counter) const {
  const double u1 = uniform_at(2 * counter);
  const double u2 = uniform_at(2 * counter + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed + kGolden) ^ (index * 0xd1b54a32d192ed03ULL + 1));
}

}  // namespace swarm
