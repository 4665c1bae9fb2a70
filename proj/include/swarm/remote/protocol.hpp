#pragma once

#include "swarm/core/error.hpp"
#include "swarm/core/types.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace swarm::remote {

inline constexpr int kProtocolVersion = 1;
inline constexpr std::uint16_t kDefaultPort = 7878;

class ProtocolError : public Error {
 public:
  using Error::Error;
};

using Json = nlohmann::json;

/// Parses one line; it must be a JSON object with a known string "type".
Json parse_message(const std::string& line);
std::string serialize(const Json& message);
Json make_message(const std::string& type);

bool known_type(const std::string& type);

Json encode_vec(const Vec3& v);
Vec3 decode_vec(const Json& j);

Json encode_colloid(const Colloid& c);
Colloid decode_colloid(const Json& j);

Json encode_state(double time, const std::vector<Colloid>& colloids);
std::vector<Colloid> decode_state(const Json& message, double* time = nullptr);

/// Actions keyed by colloid id, in the order of `colloids`.
Json encode_actions(const std::vector<Colloid>& colloids, const std::vector<Action>& actions);
std::vector<std::pair<std::int64_t, Action>> decode_actions(const Json& message);

Json encode_params(const SimParams& params);
SimParams decode_params(const Json& j);

Json make_error(const std::string& message);

}  // namespace swarm::remote
