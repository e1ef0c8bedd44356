#include "tourney/adaptation.hpp"

#include "tourney/error.hpp"

namespace tourney {

std::string_view to_string(AdaptationKind kind) {
  switch (kind) {
    case AdaptationKind::kNone: return "none";
    case AdaptationKind::kRandomReset: return "random-reset";
    case AdaptationKind::kImitateBest: return "imitate-best";
  }
  return "?";
}

std::optional<AdaptationKind> parse_adaptation_kind(std::string_view text) {
  if (text == "none") return AdaptationKind::kNone;
  if (text == "random-reset") return AdaptationKind::kRandomReset;
  if (text == "imitate-best") return AdaptationKind::kImitateBest;
  return std::nullopt;
}

AgentId best_performer(const std::map<AgentId, double>& cumulative_payoffs) {
  if (cumulative_payoffs.empty()) {
    throw Error(Errc::kParticipantMismatch, "no payoffs to rank");
  }
  // Map iteration is ascending by id, so strict > keeps the lowest id on ties.
  auto best = cumulative_payoffs.begin();
  for (auto it = cumulative_payoffs.begin(); it != cumulative_payoffs.end();
       ++it) {
    if (it->second > best->second) best = it;
  }
  return best->first;
}

AdaptationReport adapt_population(
    Registry& registry, const AdaptationPolicy& policy,
    const std::map<AgentId, double>& cumulative_payoffs, Rng& rng) {
  for (const auto& [id, payoff] : cumulative_payoffs) {
    if (!registry.contains(id)) {
      throw Error(Errc::kParticipantMismatch,
                  "payoff given for unknown agent " + id.str());
    }
  }
  if (cumulative_payoffs.size() != registry.size()) {
    throw Error(Errc::kParticipantMismatch,
                "payoffs cover " + std::to_string(cumulative_payoffs.size()) +
                    " of " + std::to_string(registry.size()) + " agents");
  }

  AdaptationReport report;
  switch (policy.kind) {
    case AdaptationKind::kNone:
      break;
    case AdaptationKind::kRandomReset:
      for (auto& agent : registry.agents()) {
        if (rng.bernoulli(policy.p)) {
          agent.strategy->reset(rng);
          report.changed.push_back(agent.id);
        }
      }
      break;
    case AdaptationKind::kImitateBest: {
      const auto model_id = best_performer(cumulative_payoffs);
      report.model = model_id;
      const Strategy& model = *registry.at(model_id).strategy;
      for (auto& agent : registry.agents()) {
        const bool draw = rng.bernoulli(policy.p);
        if (agent.id == model_id || !draw) continue;
        if (!policy.copy_kind && agent.strategy->name() != model.name()) {
          continue;
        }
        agent.strategy = model.clone();
        agent.strategy->perturb(policy.epsilon, rng);
        report.changed.push_back(agent.id);
      }
      break;
    }
  }
  return report;
}

}  // namespace tourney
