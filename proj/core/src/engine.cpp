#include "tourney/engine.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "tourney/error.hpp"

namespace tourney {

std::string_view to_string(GameOrder order) {
  switch (order) {
    case GameOrder::kOrderedKnown: return "ordered-known";
    case GameOrder::kOrderedUnknown: return "ordered-unknown";
    case GameOrder::kRandom: return "random";
  }
  return "?";
}

std::optional<GameOrder> parse_game_order(std::string_view text) {
  if (text == "ordered-known") return GameOrder::kOrderedKnown;
  if (text == "ordered-unknown") return GameOrder::kOrderedUnknown;
  if (text == "random") return GameOrder::kRandom;
  return std::nullopt;
}

std::string_view to_string(SelectionMode mode) {
  switch (mode) {
    case SelectionMode::kAll: return "all";
    case SelectionMode::kFixedList: return "fixed-list";
    case SelectionMode::kRandom: return "random";
  }
  return "?";
}

std::uint32_t TournamentPlan::population() const {
  std::uint32_t n = 0;
  for (const auto& g : agents) n += g.count;
  return n;
}

Registry build_registry(const TournamentPlan& plan) {
  Registry registry;
  for (const auto& group : plan.agents) {
    for (std::uint32_t i = 0; i < group.count; ++i) {
      registry.add(make_strategy(group.strategy));
    }
  }
  return registry;
}

namespace streams {

std::uint64_t game_seed(std::uint64_t master, std::uint32_t game_index) {
  return mix_seed(mix_seed(master, kGames), game_index);
}

std::uint64_t agent_seed(std::uint64_t game_seed, AgentId agent) {
  return mix_seed(mix_seed(game_seed, kAgents), agent.value());
}

}  // namespace streams

std::vector<GamePlan> resolve_game_order(const TournamentPlan& plan,
                                         Rng& rng) {
  std::vector<GamePlan> games = plan.games;
  if (plan.order == GameOrder::kRandom) {
    rng.shuffle(std::span<GamePlan>(games));
  }
  return games;
}

std::vector<AgentId> select_players(Registry& registry,
                                    const PlayerSelection& selection,
                                    std::uint32_t needed, Rng& rng) {
  const auto available = registry.available_ids();
  const auto short_of = [&](const std::string& why) {
    return Error(Errc::kInsufficientPlayers, why);
  };

  std::vector<AgentId> chosen;
  switch (selection.mode) {
    case SelectionMode::kAll:
      if (registry.size() != needed) {
        throw short_of("game needs " + std::to_string(needed) +
                       " players but the population has " +
                       std::to_string(registry.size()));
      }
      if (available.size() != registry.size()) {
        throw short_of("not every agent is available");
      }
      chosen = available;
      break;
    case SelectionMode::kFixedList: {
      if (selection.ids.size() != needed) {
        throw short_of("game needs " + std::to_string(needed) +
                       " players but the list names " +
                       std::to_string(selection.ids.size()));
      }
      std::set<AgentId> seen;
      for (auto id : selection.ids) {
        const auto* agent = registry.find(id);
        if (agent == nullptr) {
          throw Error(Errc::kUnknownAgentId, "unknown agent id " + id.str());
        }
        if (!seen.insert(id).second) {
          throw Error(Errc::kInvalidArgument,
                      "agent " + id.str() + " listed twice");
        }
        if (!agent->available) throw short_of(id.str() + " is not available");
      }
      chosen.assign(seen.begin(), seen.end());
      break;
    }
    case SelectionMode::kRandom: {
      if (selection.count != needed) {
        throw short_of("game needs " + std::to_string(needed) +
                       " players but selection draws " +
                       std::to_string(selection.count));
      }
      if (available.size() < needed) {
        throw short_of("game needs " + std::to_string(needed) +
                       " players but only " +
                       std::to_string(available.size()) + " are available");
      }
      for (auto i : rng.sample_indices(available.size(), needed)) {
        chosen.push_back(available[i]);
      }
      std::sort(chosen.begin(), chosen.end());
      break;
    }
  }
  registry.set_available(chosen, false);
  return chosen;
}

void release_players(Registry& registry, std::span<const AgentId> players) {
  registry.set_available(players, true);
}

GameSession::GameSession(Registry& registry, GameSpec spec,
                         std::uint32_t game_index, std::vector<AgentId> players,
                         std::uint64_t game_seed, std::string tournament_id,
                         EventTrace& trace, StatsSink& sink,
                         std::vector<GameType> upcoming, bool upcoming_known)
    : registry_(registry),
      spec_(std::move(spec)),
      game_index_(game_index),
      players_(std::move(players)),
      tournament_id_(std::move(tournament_id)),
      trace_(trace),
      sink_(sink),
      upcoming_(std::move(upcoming)),
      upcoming_known_(upcoming_known),
      q_(num_choices(spec_)) {
  std::sort(players_.begin(), players_.end());
  Rng pseudonym_rng(mix_seed(game_seed, streams::kPseudonyms));
  pseudonyms_ = Pseudonyms(players_, pseudonym_rng);
  for (auto id : players_) {
    registry_.at(id);
    state_.emplace(id, PlayerState{Rng(streams::agent_seed(game_seed, id)),
                                   {}, {}, {}});
  }
}

void GameSession::begin() {
  GameContext context{game_index_, spec_.type, spec_.axes, q_,
                      cooperative_choice(spec_)};
  nlohmann::json changes = nlohmann::json::object();
  for (auto id : players_) {
    auto& agent = registry_.at(id);
    const auto change = agent.strategy->begin_game(context, state_.at(id).rng);
    state_changes_[id] = change;
    if (change != StateChange::kNone) {
      changes[id.str()] = std::string(to_string(change));
    }
  }
  nlohmann::json players = nlohmann::json::array();
  for (auto id : players_) players.push_back(id.str());
  trace_.append(Stage::kCreateGame, game_index_, std::nullopt, std::nullopt,
                {{"type", std::string(to_string(spec_.type))},
                 {"q", q_},
                 {"rounds", spec_.rounds},
                 {"players", std::move(players)},
                 {"state_changes", std::move(changes)}});
}

RoundResult GameSession::play_round(std::uint32_t round_index) {
  if (round_index != rounds_played_ || round_index >= spec_.rounds) {
    throw Error(Errc::kInvalidArgument,
                "round " + std::to_string(round_index) +
                    " played out of sequence");
  }
  const auto aborted = [round_index](AgentId id, const std::string& why) {
    return Error(Errc::kRoundAborted, "round " + std::to_string(round_index) +
                                          ": agent " + id.str() + ": " + why);
  };

  trace_.append(Stage::kStartRound, game_index_, round_index);
  const std::optional<std::span<const GameType>> upcoming =
      upcoming_known_ ? std::optional<std::span<const GameType>>(upcoming_)
                      : std::nullopt;

  std::map<AgentId, Choice> moves;
  for (auto id : players_) {
    auto& agent = registry_.at(id);
    auto& ps = state_.at(id);
    StrategyResources resources{spec_.type,
                                q_,
                                spec_.axes.player_count,
                                round_index,
                                ps.outcomes,
                                ps.moves,
                                ps.payoffs,
                                cooperative_choice(spec_),
                                upcoming};
    Choice choice = 0;
    try {
      choice = agent.strategy->generate_choice(resources, ps.rng);
    } catch (const std::exception& e) {
      throw aborted(id, e.what());
    }
    if (choice >= q_) {
      throw aborted(id, "chose " + std::to_string(choice) + " but q=" +
                            std::to_string(q_));
    }
    moves.emplace(id, choice);
    trace_.append(Stage::kMakeMove, game_index_, round_index, id);
  }

  RoundResult result = resolve_round(spec_, moves, round_index);
  trace_.append(Stage::kGenerateOutcome, game_index_, round_index,
                std::nullopt, {{"outcome", result.outcome_symbol}});

  const RoundDisclosure disclosure(result, spec_, &pseudonyms_);
  std::vector<StatsRecord> rows;
  rows.reserve(players_.size());
  for (auto id : players_) {
    auto& agent = registry_.at(id);
    auto& ps = state_.at(id);
    auto view = disclosure.view_for(id);
    ps.moves.push_back(view.own_move);
    ps.payoffs.push_back(view.own_payoff);
    ps.outcomes.push_back(std::move(view));
    try {
      agent.strategy->observe(ps.outcomes.back(), ps.rng);
    } catch (const std::exception& e) {
      throw aborted(id, e.what());
    }
    trace_.append(Stage::kUpdateStrategy, game_index_, round_index, id);
    rows.push_back(StatsRecord{tournament_id_, game_index_, spec_.type,
                               round_index, id,
                               std::string(agent.strategy->name()),
                               result.moves.at(id), result.payoffs.at(id), 0});
  }
  sink_.record_round(std::move(rows));
  ++rounds_played_;
  return result;
}

void GameSession::play_all() {
  while (rounds_played_ < spec_.rounds) play_round(rounds_played_);
  trace_.append(Stage::kCollectStatistics, game_index_, std::nullopt,
                std::nullopt,
                {{"rows", static_cast<std::uint64_t>(spec_.rounds) *
                              players_.size()}});
}

std::string tournament_id_for(std::uint64_t seed) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "t%016llx",
                static_cast<unsigned long long>(seed));
  return buf;
}

RunArtifacts run_tournament(const TournamentPlan& plan, Registry& registry,
                            const RunOptions& options) {
  if (plan.games.empty()) {
    throw Error(Errc::kInvalidArgument, "tournament has no games");
  }
  RunArtifacts art{tournament_id_for(plan.seed), {}, {},
                   EventTrace(options.record_wall_time), nullptr};
  art.trace.append(Stage::kStartTournament, std::nullopt, std::nullopt,
                   std::nullopt,
                   {{"tournament_id", art.tournament_id},
                    {"seed", plan.seed},
                    {"seed_source", options.seed_source},
                    {"order", std::string(to_string(plan.order))},
                    {"agents", registry.size()},
                    {"games", plan.games.size()}});

  Rng order_rng(mix_seed(plan.seed, streams::kOrder));
  const auto games = resolve_game_order(plan, order_rng);

  for (std::uint32_t gi = 0; gi < games.size(); ++gi) {
    const auto& game = games[gi];
    const auto where = "game " + std::to_string(gi) + " (" +
                       std::string(to_string(game.spec.type)) + "): ";
    if (const auto violations = validate_game_spec(game.spec);
        !violations.empty()) {
      throw Error(Errc::kInvalidArgument, where + violations.front().message);
    }
    const auto gseed = streams::game_seed(plan.seed, gi);
    Rng selection_rng(mix_seed(gseed, streams::kSelection));
    std::vector<AgentId> players;
    try {
      players = select_players(registry, game.players,
                               game.spec.axes.player_count, selection_rng);
    } catch (const Error& e) {
      throw Error(e.code(), where + e.what());
    }

    std::vector<GameType> upcoming;
    for (auto j = gi + 1; j < games.size(); ++j) {
      upcoming.push_back(games[j].spec.type);
    }
    GameSession session(registry, game.spec, gi, players, gseed,
                        art.tournament_id, art.trace, art.stats,
                        std::move(upcoming),
                        plan.order == GameOrder::kOrderedKnown);
    try {
      session.begin();
      if (options.hooks.on_game_start) {
        options.hooks.on_game_start(session, registry);
      }
      session.play_all();
    } catch (const Error& e) {
      release_players(registry, players);
      throw Error(e.code(), where + e.what());
    }
    if (options.hooks.on_game_end) options.hooks.on_game_end(session, registry);
    release_players(registry, players);
    art.games.push_back(game.spec);

    const bool more_games = gi + 1 < games.size();
    if (more_games && plan.adaptation.kind != AdaptationKind::kNone) {
      std::map<AgentId, double> cumulative;
      for (auto id : registry.ids()) cumulative[id] = art.stats.total(id);
      Rng adapt_rng(mix_seed(gseed, streams::kAdaptation));
      const auto report =
          adapt_population(registry, plan.adaptation, cumulative, adapt_rng);
      nlohmann::json changed = nlohmann::json::array();
      for (auto id : report.changed) changed.push_back(id.str());
      nlohmann::json detail = {
          {"kind", std::string(to_string(plan.adaptation.kind))},
          {"changed", std::move(changed)}};
      if (report.model) detail["model"] = report.model->str();
      art.trace.append(Stage::kAdaptStrategy, std::nullopt, std::nullopt,
                       std::nullopt, std::move(detail));
    }
  }

  art.trace.append(Stage::kEndTournament, std::nullopt, std::nullopt,
                   std::nullopt,
                   {{"records", art.stats.records().size()}});
  art.final_population = registry.snapshot();

  if (options.verify_trace) {
    const auto violations = verify_stage_order(art.trace);
    if (!violations.empty()) {
      throw Error(Errc::kInvalidArgument,
                  "trace violates the lifecycle order: " + violations.front());
    }
  }
  return art;
}

}  // namespace tourney
