#include "swarm/learn/checkpoint.hpp"

#include "swarm/core/error.hpp"

#include <json.hpp>

#include <fstream>

namespace swarm::learn {

namespace {

constexpr int kCheckpointVersion = 1;

nlohmann::json to_json(const Eigen::VectorXd& v) {
  return nlohmann::json(std::vector<double>(v.data(), v.data() + v.size()));
}

Eigen::VectorXd vector_from(const nlohmann::json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const ActorCriticNet& network,
                     const Optimizer& optimizer, long update_count) {
  const auto& shape = network.shape();
  nlohmann::json doc;
  doc["format"] = "swarm-checkpoint";
  doc["version"] = kCheckpointVersion;
  doc["shape"] = {{"input_width", shape.input_width},
                  {"n_actions", shape.n_actions},
                  {"hidden", shape.hidden},
                  {"architecture", to_string(shape.architecture)}};
  doc["parameters"] = to_json(network.parameters());
  const auto& oc = optimizer.config();
  doc["optimizer"] = {{"kind", to_string(oc.kind)},
                      {"learning_rate", oc.learning_rate},
                      {"beta1", oc.beta1},
                      {"beta2", oc.beta2},
                      {"epsilon", oc.epsilon},
                      {"steps", optimizer.steps()},
                      {"m", to_json(optimizer.first_moment())},
                      {"v", to_json(optimizer.second_moment())}};
  doc["update_count"] = update_count;

  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp);
    if (!out) throw Error("cannot write checkpoint " + tmp.string());
    out << doc.dump(1) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

long load_checkpoint(const std::filesystem::path& path, ActorCriticNet& network, Optimizer& optimizer) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read checkpoint " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed checkpoint " + path.string() + ": " + e.what());
  }
  try {
    if (doc.at("format") != "swarm-checkpoint") throw Error("not a checkpoint: " + path.string());
    if (doc.at("version").get<int>() != kCheckpointVersion) throw Error("unsupported checkpoint version");
    const auto& s = doc.at("shape");
    NetworkShape shape;
    shape.input_width = s.at("input_width").get<int>();
    shape.n_actions = s.at("n_actions").get<int>();
    shape.hidden = s.at("hidden").get<std::vector<int>>();
    shape.architecture = architecture_from_string(s.at("architecture").get<std::string>());
    if (!(shape == network.shape())) throw Error("checkpoint shape mismatch: " + path.string());

    const Eigen::VectorXd theta = vector_from(doc.at("parameters"));
    if (theta.size() != network.parameter_count()) throw Error("checkpoint parameter count mismatch");
    network.set_parameters(theta);

    const auto& o = doc.at("optimizer");
    OptimizerConfig oc;
    oc.kind = optimizer_from_string(o.at("kind").get<std::string>());
    oc.learning_rate = o.at("learning_rate").get<double>();
    oc.beta1 = o.at("beta1").get<double>();
    oc.beta2 = o.at("beta2").get<double>();
    oc.epsilon = o.at("epsilon").get<double>();
    optimizer = Optimizer(oc, theta.size());
    optimizer.restore(vector_from(o.at("m")), vector_from(o.at("v")), o.at("steps").get<long>());
    return doc.at("update_count").get<long>();
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed checkpoint " + path.string() + ": " + e.what());
  }
}

}  // namespace swarm::learn
