#pragma once

#include <memory>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "tourney/strategy.hpp"
#include "tourney/types.hpp"

namespace tourney {

struct Agent {
  AgentId id;
  std::unique_ptr<Strategy> strategy;
  // False while the agent is seated in a running game.
  bool available = true;
};

// The population: agents kept in ascending id order, ids unique.
class Registry {
 public:
  // Appends with the next free id (one past the largest so far).
  AgentId add(std::unique_ptr<Strategy> strategy);
  // Throws kInvalidArgument for a duplicate id.
  void add(AgentId id, std::unique_ptr<Strategy> strategy);

  std::size_t size() const { return agents_.size(); }
  std::span<Agent> agents() { return agents_; }
  std::span<const Agent> agents() const { return agents_; }

  bool contains(AgentId id) const { return find(id) != nullptr; }
  Agent* find(AgentId id);
  const Agent* find(AgentId id) const;
  // Throws kUnknownAgentId.
  Agent& at(AgentId id);
  const Agent& at(AgentId id) const;

  std::vector<AgentId> ids() const;
  std::vector<AgentId> available_ids() const;
  void set_available(std::span<const AgentId> ids, bool available);

  // Per-agent strategy snapshots keyed by the agent's textual id.
  nlohmann::json snapshot() const;

 private:
  std::vector<Agent> agents_;
};

}  // namespace tourney
