#include "swarm/remote/protocol.hpp"

#include <array>

namespace swarm::remote {

namespace {

constexpr std::array<const char*, 9> kTypes = {"hello", "config", "state_request", "state", "actions",
                                               "kill",  "bye",    "ack",           "error"};

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw ProtocolError(std::string("missing field '") + name + "'");
  return j.at(name);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw ProtocolError(std::string("field '") + what + "' must be a number");
  return j.get<double>();
}

std::int64_t integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ProtocolError(std::string("field '") + what + "' must be an integer");
  return j.get<std::int64_t>();
}

}  // namespace

bool known_type(const std::string& type) {
  for (const char* t : kTypes)
    if (type == t) return true;
  return false;
}

Json parse_message(const std::string& line) {
  Json j = Json::parse(line, nullptr, false);
  if (j.is_discarded()) throw ProtocolError("malformed JSON");
  if (!j.is_object()) throw ProtocolError("message must be a JSON object");
  if (!j.contains("type") || !j["type"].is_string()) throw ProtocolError("message without type");
  const std::string type = j["type"];
  if (!known_type(type)) throw ProtocolError("unknown message type '" + type + "'");
  return j;
}

std::string serialize(const Json& message) { return message.dump(); }

Json make_message(const std::string& type) { return Json{{"type", type}}; }

Json make_error(const std::string& message) {
  Json j = make_message("error");
  j["message"] = message;
  return j;
}

Json encode_vec(const Vec3& v) { return Json::array({v[0], v[1], v[2]}); }

Vec3 decode_vec(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw ProtocolError("vector must have three components");
  return Vec3(number(j[0], "vector"), number(j[1], "vector"), number(j[2], "vector"));
}

Json encode_colloid(const Colloid& c) {
  return Json{{"id", c.id},
              {"type", c.type},
              {"pos", encode_vec(c.pos)},
              {"director", encode_vec(c.director)},
              {"velocity", encode_vec(c.velocity)}};
}

Colloid decode_colloid(const Json& j) {
  Colloid c;
  c.id = integer(field(j, "id"), "id");
  c.type = static_cast<int>(integer(field(j, "type"), "type"));
  c.pos = decode_vec(field(j, "pos"));
  c.director = decode_vec(field(j, "director"));
  c.velocity = decode_vec(field(j, "velocity"));
  return c;
}

Json encode_state(double time, const std::vector<Colloid>& colloids) {
  Json j = make_message("state");
  j["time"] = time;
  Json list = Json::array();
  for (const auto& c : colloids) list.push_back(encode_colloid(c));
  j["colloids"] = std::move(list);
  return j;
}

std::vector<Colloid> decode_state(const Json& message, double* time) {
  const double t = number(field(message, "time"), "time");
  const Json& list = field(message, "colloids");
  if (!list.is_array()) throw ProtocolError("colloids must be a list");
  std::vector<Colloid> out;
  out.reserve(list.size());
  for (const auto& c : list) out.push_back(decode_colloid(c));
  if (time) *time = t;
  return out;
}

Json encode_actions(const std::vector<Colloid>& colloids, const std::vector<Action>& actions) {
  if (colloids.size() != actions.size()) throw Error("action/colloid cardinality mismatch");
  Json j = make_message("actions");
  Json list = Json::array();
  for (std::size_t i = 0; i < colloids.size(); ++i) {
    const Action& a = actions[i];
    list.push_back(Json{{"id", colloids[i].id},
                        {"force", a.force},
                        {"torque", encode_vec(a.torque)},
                        {"new_direction", a.new_direction ? encode_vec(*a.new_direction) : Json(nullptr)}});
  }
  j["actions"] = std::move(list);
  return j;
}

std::vector<std::pair<std::int64_t, Action>> decode_actions(const Json& message) {
  const Json& list = field(message, "actions");
  if (!list.is_array()) throw ProtocolError("actions must be a list");
  std::vector<std::pair<std::int64_t, Action>> out;
  for (const auto& item : list) {
    Action a;
    a.force = number(field(item, "force"), "force");
    a.torque = decode_vec(field(item, "torque"));
    if (item.contains("new_direction") && !item["new_direction"].is_null())
      a.new_direction = decode_vec(item["new_direction"]);
    out.emplace_back(integer(field(item, "id"), "id"), a);
  }
  return out;
}

Json encode_params(const SimParams& p) {
  return Json{{"gamma_t", p.gamma_t},   {"gamma_r", p.gamma_r}, {"kT", p.kT},
              {"dt", p.dt},             {"dim", p.dim},         {"box", encode_vec(p.box)},
              {"steps_per_slice", p.steps_per_slice}, {"boundary", to_string(p.boundary)}};
}

SimParams decode_params(const Json& j) {
  SimParams p;
  p.gamma_t = number(field(j, "gamma_t"), "gamma_t");
  p.gamma_r = number(field(j, "gamma_r"), "gamma_r");
  p.kT = number(field(j, "kT"), "kT");
  p.dt = number(field(j, "dt"), "dt");
  p.dim = static_cast<int>(integer(field(j, "dim"), "dim"));
  p.box = decode_vec(field(j, "box"));
  p.steps_per_slice = static_cast<int>(integer(field(j, "steps_per_slice"), "steps_per_slice"));
  const Json& b = field(j, "boundary");
  if (!b.is_string()) throw ProtocolError("boundary must be a string");
  try {
    p.boundary = boundary_from_string(b.get<std::string>());
  } catch (const Error& e) {
    throw ProtocolError(e.what());
  }
  return p;
}

}  // namespace swarm::remote
