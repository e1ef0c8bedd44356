#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "tourney/games.hpp"
#include "tourney/rng.hpp"
#include "tourney/types.hpp"

namespace tourney {

// What the engine tells a strategy when it joins a game.
struct GameContext {
  std::uint32_t game_index = 0;
  GameType type = GameType::kIpd;
  GameAxes axes;
  std::uint32_t q = 2;
  Choice cooperative_choice = 0;
};

// Everything a strategy may consult when choosing a move. The spans view
// storage owned by the running game and are only valid for the call.
struct StrategyResources {
  GameType game_type = GameType::kIpd;
  std::uint32_t q = 2;
  std::uint32_t player_count = 2;
  std::uint32_t round_index = 0;
  std::span<const ViewerOutcome> prior_outcomes;
  std::span<const Choice> own_moves;
  std::span<const double> own_payoffs;
  Choice cooperative_choice = 0;
  // Present only when the game order is known to players.
  std::optional<std::span<const GameType>> upcoming_games;
};

// How a strategy's state changed when it joined a game.
enum class StateChange { kNone, kInitialized, kResized };

std::string_view to_string(StateChange change);

// Uniform contract every strategy implements. A strategy instance belongs to
// one agent and is driven by the engine's single-threaded game loop.
class Strategy {
 public:
  virtual ~Strategy() = default;

  virtual std::string_view name() const = 0;

  virtual StateChange begin_game(const GameContext& /*game*/, Rng& /*rng*/) {
    return StateChange::kNone;
  }

  // Returns a choice in [0, resources.q).
  virtual Choice generate_choice(const StrategyResources& resources,
                                 Rng& rng) = 0;

  // Called once per completed round with the viewer's outcome.
  virtual void observe(const ViewerOutcome& /*outcome*/, Rng& /*rng*/) {}

  // Discards learned state. Stateless strategies ignore this.
  virtual void reset(Rng& /*rng*/) {}

  // Redraws each learned table entry with probability epsilon.
  virtual void perturb(double /*epsilon*/, Rng& /*rng*/) {}

  virtual std::unique_ptr<Strategy> clone() const = 0;

  // Full state as JSON, including the key/value resources. Two strategies
  // with equal snapshots behave identically.
  virtual nlohmann::json snapshot() const;

  // Key/value store for external parameters. Unknown keys are kept.
  void update_strategy(std::string key, std::string value);
  std::optional<std::string> resource(std::string_view key) const;

 protected:
  Strategy() = default;
  Strategy(const Strategy&) = default;
  Strategy& operator=(const Strategy&) = default;

 private:
  std::map<std::string, std::string, std::less<>> resources_;
};

}  // namespace tourney
