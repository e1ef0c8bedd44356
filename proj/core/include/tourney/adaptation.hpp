#pragma once

#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "tourney/registry.hpp"
#include "tourney/rng.hpp"

namespace tourney {

enum class AdaptationKind { kNone, kRandomReset, kImitateBest };

std::string_view to_string(AdaptationKind kind);
std::optional<AdaptationKind> parse_adaptation_kind(std::string_view text);

struct AdaptationPolicy {
  AdaptationKind kind = AdaptationKind::kNone;
  // Per-agent probability of adapting.
  double p = 0;
  // Per-entry redraw probability applied to imitated tables.
  double epsilon = 0;
  // Lets an agent take on a strategy of a different kind when imitating.
  bool copy_kind = false;

  friend bool operator==(const AdaptationPolicy&,
                         const AdaptationPolicy&) = default;
};

struct AdaptationReport {
  std::vector<AgentId> changed;
  // Imitation target, when the policy has one.
  std::optional<AgentId> model;
};

// The agent with the highest cumulative payoff, ties to the lowest id.
AgentId best_performer(const std::map<AgentId, double>& cumulative_payoffs);

// Runs one between-game adaptation step over the whole population.
//
// random-reset: each agent independently, with probability p, discards its
// learned state. imitate-best: every agent other than the best performer,
// with probability p, takes a deep copy of the best performer's strategy and
// then perturbs each copied table entry with probability epsilon. Without
// copy_kind only agents whose strategy has the same name are eligible.
//
// Agents are visited in ascending id order and each one consumes exactly one
// Bernoulli draw, so the outcome is fixed by the generator's seed.
AdaptationReport adapt_population(
    Registry& registry, const AdaptationPolicy& policy,
    const std::map<AgentId, double>& cumulative_payoffs, Rng& rng);

}  // namespace tourney
