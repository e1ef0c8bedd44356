#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tourney/best_play.hpp"
#include "tourney/strategy.hpp"

namespace tourney {

enum class BagMode { kFixed, kRandom };

std::string_view to_string(BagMode mode);

// Typed parameters for one strategy. Only the fields of the named strategy
// are meaningful; the rest keep their defaults.
struct StrategyConfig {
  std::string name;
  Choice choice = 0;            // FixedChoice
  std::uint32_t memory = 3;     // BestPlay
  std::uint32_t pool = 1;       // BestPlay
  BagMode bag_mode = BagMode::kRandom;
  std::vector<StrategyConfig> members;           // StrategyBag
  std::map<GameType, std::size_t> mapping;       // StrategyBag, fixed mode

  friend bool operator==(const StrategyConfig&, const StrategyConfig&) = default;
};

struct ParameterDescriptor {
  std::string name;
  std::string type;
  std::string bounds;
  std::string default_value;
};

// Listing metadata for a strategy kind.
struct StrategyDescriptor {
  std::string name;
  std::string summary;
  std::vector<ParameterDescriptor> parameters;
  std::string applicability;
  std::function<bool(const GameAxes&)> applicable;
};

// Every registered strategy, in a fixed order.
const std::vector<StrategyDescriptor>& strategy_catalog();
const StrategyDescriptor* find_strategy(std::string_view name);

// Throws kInvalidArgument for an unregistered name.
std::unique_ptr<Strategy> make_strategy(const StrategyConfig& config);

class RandomStrategy final : public Strategy {
 public:
  std::string_view name() const override { return "Random"; }
  Choice generate_choice(const StrategyResources& resources, Rng& rng) override;
  std::unique_ptr<Strategy> clone() const override;
};

class FixedChoiceStrategy final : public Strategy {
 public:
  explicit FixedChoiceStrategy(Choice choice) : choice_(choice) {}
  std::string_view name() const override { return "FixedChoice"; }
  Choice generate_choice(const StrategyResources& resources, Rng& rng) override;
  std::unique_ptr<Strategy> clone() const override;
  nlohmann::json snapshot() const override;

 private:
  Choice choice_;
};

// Opens with the game's cooperative choice, then echoes the others: the
// opponent's last move in two-player games, the rounded mean of the other
// players' last moves when moves are visible, otherwise the last outcome
// symbol.
class TitForTatStrategy final : public Strategy {
 public:
  std::string_view name() const override { return "TitForTat"; }
  Choice generate_choice(const StrategyResources& resources, Rng& rng) override;
  std::unique_ptr<Strategy> clone() const override;
};

// Tables are created lazily on the first game, since q is not known before.
class BestPlayStrategy final : public Strategy {
 public:
  BestPlayStrategy(std::uint32_t memory, std::uint32_t pool)
      : memory_(memory), pool_(pool) {}

  std::string_view name() const override { return "BestPlay"; }
  StateChange begin_game(const GameContext& game, Rng& rng) override;
  Choice generate_choice(const StrategyResources& resources, Rng& rng) override;
  void observe(const ViewerOutcome& outcome, Rng& rng) override;
  void reset(Rng& rng) override;
  void perturb(double epsilon, Rng& rng) override;
  std::unique_ptr<Strategy> clone() const override;
  nlohmann::json snapshot() const override;

  const std::optional<BestPlayState>& state() const { return state_; }

 private:
  std::uint32_t memory_;
  std::uint32_t pool_;
  std::optional<BestPlayState> state_;
};

// Index of the member to play `type` with. Fixed mode looks the type up in
// `mapping` (kNoMapping when absent); random mode draws uniformly.
std::size_t bag_select(BagMode mode,
                       const std::map<GameType, std::size_t>& mapping,
                       std::size_t bag_size, GameType type, Rng& rng);

// Meta-strategy holding several sub-strategies and playing one per game.
class StrategyBag final : public Strategy {
 public:
  StrategyBag(BagMode mode, std::vector<std::unique_ptr<Strategy>> members,
              std::map<GameType, std::size_t> mapping);
  StrategyBag(const StrategyBag& other);

  std::string_view name() const override { return "StrategyBag"; }
  StateChange begin_game(const GameContext& game, Rng& rng) override;
  Choice generate_choice(const StrategyResources& resources, Rng& rng) override;
  void observe(const ViewerOutcome& outcome, Rng& rng) override;
  void reset(Rng& rng) override;
  void perturb(double epsilon, Rng& rng) override;
  std::unique_ptr<Strategy> clone() const override;
  nlohmann::json snapshot() const override;

  std::optional<std::size_t> active() const { return active_; }
  const Strategy& member(std::size_t i) const { return *members_.at(i); }

 private:
  Strategy& active_member();

  BagMode mode_;
  std::vector<std::unique_ptr<Strategy>> members_;
  std::map<GameType, std::size_t> mapping_;
  std::optional<std::size_t> active_;
};

}  // namespace tourney
