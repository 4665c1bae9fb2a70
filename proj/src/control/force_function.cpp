#include "swarm/control/force_function.hpp"

#include "swarm/core/error.hpp"
#include "swarm/sensing/observable.hpp"

#include <algorithm>
#include <map>

namespace swarm {

std::string to_string(AgentKind k) { return k == AgentKind::actor_critic ? "actor_critic" : "classical"; }

SwarmForceFunction::SwarmForceFunction(std::vector<std::shared_ptr<Agent>> agents, std::vector<int> passive_types)
    : agents_(std::move(agents)), passive_(std::move(passive_types)) {
  for (std::size_t a = 0; a < agents_.size(); ++a) {
    if (!agents_[a]) throw Error("force function: null agent");
    for (std::size_t b = a + 1; b < agents_.size(); ++b) {
      if (agents_[a]->species() == agents_[b]->species())
        throw Error("force function: more than one agent for species " + std::to_string(agents_[a]->species()));
    }
  }
}

std::vector<Action> SwarmForceFunction::calc_action(const std::vector<Colloid>& colloids) {
  std::vector<Action> actions(colloids.size());
  last_indices_.assign(colloids.size(), -1);

  std::map<int, std::vector<std::size_t>> by_species;
  for (std::size_t i = 0; i < colloids.size(); ++i) by_species[colloids[i].type].push_back(i);

  for (const auto& [species, members] : by_species) {
    auto it = std::find_if(agents_.begin(), agents_.end(), [&](const auto& a) { return a->species() == species; });
    if (it == agents_.end()) {
      if (std::find(passive_.begin(), passive_.end(), species) == passive_.end())
        throw Error("uncontrolled species " + std::to_string(species));
      continue;
    }
    AgentDecision d = (*it)->decide(colloids, members);
    if (d.actions.size() != members.size())
      throw Error("action/colloid cardinality for species " + std::to_string(species));
    for (std::size_t m = 0; m < members.size(); ++m) {
      actions[members[m]] = d.actions[m];
      if (m < d.indices.size()) last_indices_[members[m]] = d.indices[m];
    }
  }
  return actions;
}

bool SwarmForceFunction::kill_switch() const {
  return std::any_of(agents_.begin(), agents_.end(), [](const auto& a) { return a->kill_switch(); });
}

void SwarmForceFunction::reset(const std::vector<Colloid>& colloids) {
  for (auto& a : agents_) a->reset(colloids);
}

void SwarmForceFunction::finalize(const std::vector<Colloid>& colloids) {
  for (auto& a : agents_) a->finalize(colloids);
}

}  // namespace swarm
