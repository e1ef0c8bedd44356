#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tourney/adaptation.hpp"
#include "tourney/games.hpp"
#include "tourney/registry.hpp"
#include "tourney/rng.hpp"
#include "tourney/stats.hpp"
#include "tourney/strategies.hpp"
#include "tourney/trace.hpp"

namespace tourney {

enum class GameOrder { kOrderedKnown, kOrderedUnknown, kRandom };

std::string_view to_string(GameOrder order);
std::optional<GameOrder> parse_game_order(std::string_view text);

enum class SelectionMode { kAll, kFixedList, kRandom };

std::string_view to_string(SelectionMode mode);

struct PlayerSelection {
  SelectionMode mode = SelectionMode::kAll;
  std::vector<AgentId> ids;   // kFixedList
  std::uint32_t count = 0;    // kRandom

  friend bool operator==(const PlayerSelection&,
                         const PlayerSelection&) = default;
};

struct GamePlan {
  GameSpec spec;
  PlayerSelection players;

  friend bool operator==(const GamePlan&, const GamePlan&) = default;
};

// `count` agents sharing one strategy configuration.
struct AgentGroup {
  std::uint32_t count = 1;
  StrategyConfig strategy;

  friend bool operator==(const AgentGroup&, const AgentGroup&) = default;
};

struct OutputOptions {
  std::string dir = "out";
  bool summary = true;

  friend bool operator==(const OutputOptions&, const OutputOptions&) = default;
};

// A validated tournament description.
struct TournamentPlan {
  std::uint64_t seed = 0;
  GameOrder order = GameOrder::kOrderedKnown;
  std::vector<AgentGroup> agents;
  std::vector<GamePlan> games;
  AdaptationPolicy adaptation;
  OutputOptions output;

  std::uint32_t population() const;

  friend bool operator==(const TournamentPlan&,
                         const TournamentPlan&) = default;
};

// Agents a1..aN in the order of the plan's groups.
Registry build_registry(const TournamentPlan& plan);

// Seeds of every generator in a run, all derived from the master seed:
//   game g      mix(mix(seed, kGames), g)
//   agent a     mix(mix(game_seed, kAgents), a)
// plus fixed-key children of the game seed for player selection, pseudonyms
// and adaptation, and of the master seed for the game order. Game g's draws
// depend only on (seed, g).
namespace streams {
inline constexpr std::uint64_t kOrder = 0x6f72646572ULL;
inline constexpr std::uint64_t kGames = 0x67616d6573ULL;
inline constexpr std::uint64_t kAgents = 0x6167656e74ULL;
inline constexpr std::uint64_t kSelection = 0x73656c6563ULL;
inline constexpr std::uint64_t kPseudonyms = 0x70736575ULL;
inline constexpr std::uint64_t kAdaptation = 0x6164617074ULL;

std::uint64_t game_seed(std::uint64_t master, std::uint32_t game_index);
std::uint64_t agent_seed(std::uint64_t game_seed, AgentId agent);
}  // namespace streams

// Ordered modes keep the configured order; random shuffles it with `rng`.
std::vector<GamePlan> resolve_game_order(const TournamentPlan& plan, Rng& rng);

// Picks the players for one game and marks them unavailable. Returned ids are
// ascending. Throws kInsufficientPlayers or kUnknownAgentId.
std::vector<AgentId> select_players(Registry& registry,
                                    const PlayerSelection& selection,
                                    std::uint32_t needed, Rng& rng);

void release_players(Registry& registry, std::span<const AgentId> players);

// One game in progress: owns the per-player histories and generators and
// drives the round loop against the registry's strategies.
class GameSession {
 public:
  GameSession(Registry& registry, GameSpec spec, std::uint32_t game_index,
              std::vector<AgentId> players, std::uint64_t game_seed,
              std::string tournament_id, EventTrace& trace, StatsSink& sink,
              std::vector<GameType> upcoming = {}, bool upcoming_known = false);

  // Hands every player the game context; logs CreateGame with the per-agent
  // state changes.
  void begin();

  // StartRound, one MakeMove per player (ascending id), GenerateOutcome,
  // one UpdateStrategy per player, then the round's rows go to the sink.
  // Strategy failures become kRoundAborted naming the agent.
  RoundResult play_round(std::uint32_t round_index);

  // Plays every round not yet played, then logs CollectStatistics.
  void play_all();

  const GameSpec& spec() const { return spec_; }
  std::uint32_t game_index() const { return game_index_; }
  const std::vector<AgentId>& players() const { return players_; }
  const std::map<AgentId, StateChange>& state_changes() const {
    return state_changes_;
  }

 private:
  struct PlayerState {
    Rng rng;
    std::vector<ViewerOutcome> outcomes;
    std::vector<Choice> moves;
    std::vector<double> payoffs;
  };

  Registry& registry_;
  GameSpec spec_;
  std::uint32_t game_index_;
  std::vector<AgentId> players_;
  std::string tournament_id_;
  EventTrace& trace_;
  StatsSink& sink_;
  std::vector<GameType> upcoming_;
  bool upcoming_known_;
  std::uint32_t q_;
  Pseudonyms pseudonyms_;
  std::map<AgentId, PlayerState> state_;
  std::map<AgentId, StateChange> state_changes_;
  std::uint32_t rounds_played_ = 0;
};

struct RunHooks {
  // After every player has joined the game, before the first round.
  std::function<void(const GameSession&, const Registry&)> on_game_start;
  // After the last round, before players are released and adaptation runs.
  std::function<void(const GameSession&, const Registry&)> on_game_end;
};

struct RunOptions {
  // Recorded in the StartTournament event: "config" or "cli".
  std::string seed_source = "config";
  bool record_wall_time = true;
  // Re-check the trace against the lifecycle order before returning.
  bool verify_trace = true;
  RunHooks hooks;
};

struct RunArtifacts {
  std::string tournament_id;
  std::vector<GameSpec> games;
  StatsSink stats;
  EventTrace trace;
  nlohmann::json final_population;
};

std::string tournament_id_for(std::uint64_t seed);

// Plays the whole tournament. Errors from a game are rethrown with the same
// code and a message naming the game index and round.
RunArtifacts run_tournament(const TournamentPlan& plan, Registry& registry,
                            const RunOptions& options = {});

}  // namespace tourney
