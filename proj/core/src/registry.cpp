#include "tourney/registry.hpp"

#include <algorithm>

#include "tourney/error.hpp"

namespace tourney {

AgentId Registry::add(std::unique_ptr<Strategy> strategy) {
  const AgentId id(agents_.empty() ? 1 : agents_.back().id.value() + 1);
  add(id, std::move(strategy));
  return id;
}

void Registry::add(AgentId id, std::unique_ptr<Strategy> strategy) {
  if (!strategy) {
    throw Error(Errc::kInvalidArgument, "agent " + id.str() + " has no strategy");
  }
  const auto pos = std::lower_bound(
      agents_.begin(), agents_.end(), id,
      [](const Agent& a, AgentId v) { return a.id < v; });
  if (pos != agents_.end() && pos->id == id) {
    throw Error(Errc::kInvalidArgument, "duplicate agent id " + id.str());
  }
  agents_.insert(pos, Agent{id, std::move(strategy), true});
}

Agent* Registry::find(AgentId id) {
  return const_cast<Agent*>(std::as_const(*this).find(id));
}

const Agent* Registry::find(AgentId id) const {
  const auto pos = std::lower_bound(
      agents_.begin(), agents_.end(), id,
      [](const Agent& a, AgentId v) { return a.id < v; });
  if (pos == agents_.end() || pos->id != id) return nullptr;
  return &*pos;
}

Agent& Registry::at(AgentId id) {
  return const_cast<Agent&>(std::as_const(*this).at(id));
}

const Agent& Registry::at(AgentId id) const {
  const auto* agent = find(id);
  if (agent == nullptr) {
    throw Error(Errc::kUnknownAgentId, "unknown agent id " + id.str());
  }
  return *agent;
}

std::vector<AgentId> Registry::ids() const {
  std::vector<AgentId> out;
  out.reserve(agents_.size());
  for (const auto& a : agents_) out.push_back(a.id);
  return out;
}

std::vector<AgentId> Registry::available_ids() const {
  std::vector<AgentId> out;
  for (const auto& a : agents_) {
    if (a.available) out.push_back(a.id);
  }
  return out;
}

void Registry::set_available(std::span<const AgentId> ids, bool available) {
  for (auto id : ids) at(id).available = available;
}

nlohmann::json Registry::snapshot() const {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& a : agents_) out[a.id.str()] = a.strategy->snapshot();
  return out;
}

}  // namespace tourney
