#include "tourney/strategies.hpp"

#include <algorithm>

#include "tourney/codec.hpp"
#include "tourney/error.hpp"

namespace tourney {

std::string_view to_string(StateChange change) {
  switch (change) {
    case StateChange::kNone: return "none";
    case StateChange::kInitialized: return "initialized";
    case StateChange::kResized: return "resized";
  }
  return "?";
}

std::string_view to_string(BagMode mode) {
  return mode == BagMode::kFixed ? "fixed" : "random";
}

nlohmann::json Strategy::snapshot() const {
  nlohmann::json out;
  out["strategy"] = std::string(name());
  out["resources"] = nlohmann::json::object();
  for (const auto& [key, value] : resources_) out["resources"][key] = value;
  return out;
}

void Strategy::update_strategy(std::string key, std::string value) {
  resources_.insert_or_assign(std::move(key), std::move(value));
}

std::optional<std::string> Strategy::resource(std::string_view key) const {
  const auto it = resources_.find(key);
  if (it == resources_.end()) return std::nullopt;
  return it->second;
}

// Random

Choice RandomStrategy::generate_choice(const StrategyResources& resources,
                                       Rng& rng) {
  return static_cast<Choice>(rng.below(resources.q));
}

std::unique_ptr<Strategy> RandomStrategy::clone() const {
  return std::make_unique<RandomStrategy>(*this);
}

// FixedChoice

Choice FixedChoiceStrategy::generate_choice(const StrategyResources& resources,
                                            Rng&) {
  if (choice_ >= resources.q) {
    throw Error(Errc::kInvalidMove,
                "FixedChoice(" + std::to_string(choice_) +
                    ") is not a valid move in a game with " +
                    std::to_string(resources.q) + " choices");
  }
  return choice_;
}

std::unique_ptr<Strategy> FixedChoiceStrategy::clone() const {
  return std::make_unique<FixedChoiceStrategy>(*this);
}

nlohmann::json FixedChoiceStrategy::snapshot() const {
  auto out = Strategy::snapshot();
  out["choice"] = choice_;
  return out;
}

// TitForTat

Choice TitForTatStrategy::generate_choice(const StrategyResources& resources,
                                          Rng&) {
  const auto top = resources.q - 1;
  if (resources.round_index == 0 || resources.prior_outcomes.empty()) {
    return std::min(resources.cooperative_choice, top);
  }
  const auto& last = resources.prior_outcomes.back();
  if (!last.moves_visible()) {
    return std::min(last.outcome_symbol, top);
  }
  std::uint64_t sum = 0;
  std::uint64_t count = 0;
  for (const auto& move : *last.moves) {
    if (move.label == last.self_label) continue;
    sum += move.move;
    ++count;
  }
  if (count == 0) return std::min(resources.cooperative_choice, top);
  // Round half up.
  const auto mean = (2 * sum + count) / (2 * count);
  return static_cast<Choice>(std::min<std::uint64_t>(mean, top));
}

std::unique_ptr<Strategy> TitForTatStrategy::clone() const {
  return std::make_unique<TitForTatStrategy>(*this);
}

// BestPlay

StateChange BestPlayStrategy::begin_game(const GameContext& game, Rng& rng) {
  if (!state_) {
    state_ = best_play_init(memory_, game.q, pool_, rng);
    return StateChange::kInitialized;
  }
  return best_play_resize(*state_, game.q, rng) ? StateChange::kResized
                                                : StateChange::kNone;
}

Choice BestPlayStrategy::generate_choice(const StrategyResources& resources,
                                         Rng& rng) {
  if (!state_ || state_->q != resources.q) {
    throw Error(Errc::kNotInitialized,
                "BestPlay has no tables for q=" + std::to_string(resources.q));
  }
  return best_play_choice(*state_, rng);
}

void BestPlayStrategy::observe(const ViewerOutcome& outcome, Rng&) {
  if (!state_) {
    throw Error(Errc::kNotInitialized, "BestPlay observed before any game");
  }
  best_play_observe(*state_, outcome.outcome_symbol);
}

void BestPlayStrategy::reset(Rng& rng) {
  if (state_) state_ = best_play_init(memory_, state_->q, pool_, rng);
}

void BestPlayStrategy::perturb(double epsilon, Rng& rng) {
  if (state_) best_play_perturb(*state_, epsilon, rng);
}

std::unique_ptr<Strategy> BestPlayStrategy::clone() const {
  return std::make_unique<BestPlayStrategy>(*this);
}

nlohmann::json BestPlayStrategy::snapshot() const {
  auto out = Strategy::snapshot();
  out["memory"] = memory_;
  out["pool"] = pool_;
  if (state_) {
    out["q"] = state_->q;
    out["tables"] = state_->tables;
    out["scores"] = state_->virtual_scores;
    out["history"] = state_->history;
  } else {
    out["q"] = nullptr;
  }
  return out;
}

// StrategyBag

std::size_t bag_select(BagMode mode,
                       const std::map<GameType, std::size_t>& mapping,
                       std::size_t bag_size, GameType type, Rng& rng) {
  if (bag_size == 0) {
    throw Error(Errc::kInvalidArgument, "strategy bag is empty");
  }
  if (mode == BagMode::kRandom) {
    return static_cast<std::size_t>(rng.below(bag_size));
  }
  const auto it = mapping.find(type);
  if (it == mapping.end()) {
    throw Error(Errc::kNoMapping, "strategy bag has no member mapped to " +
                                      std::string(to_string(type)));
  }
  if (it->second >= bag_size) {
    throw Error(Errc::kInvalidArgument,
                "strategy bag mapping points past the last member");
  }
  return it->second;
}

StrategyBag::StrategyBag(BagMode mode,
                         std::vector<std::unique_ptr<Strategy>> members,
                         std::map<GameType, std::size_t> mapping)
    : mode_(mode), members_(std::move(members)), mapping_(std::move(mapping)) {
  if (members_.empty()) {
    throw Error(Errc::kInvalidArgument, "strategy bag is empty");
  }
}

StrategyBag::StrategyBag(const StrategyBag& other)
    : Strategy(other),
      mode_(other.mode_),
      mapping_(other.mapping_),
      active_(other.active_) {
  members_.reserve(other.members_.size());
  for (const auto& m : other.members_) members_.push_back(m->clone());
}

StateChange StrategyBag::begin_game(const GameContext& game, Rng& rng) {
  active_ = bag_select(mode_, mapping_, members_.size(), game.type, rng);
  return members_[*active_]->begin_game(game, rng);
}

Strategy& StrategyBag::active_member() {
  if (!active_) {
    throw Error(Errc::kNotInitialized, "strategy bag has no active member");
  }
  return *members_[*active_];
}

Choice StrategyBag::generate_choice(const StrategyResources& resources,
                                    Rng& rng) {
  return active_member().generate_choice(resources, rng);
}

void StrategyBag::observe(const ViewerOutcome& outcome, Rng& rng) {
  active_member().observe(outcome, rng);
}

void StrategyBag::reset(Rng& rng) {
  for (auto& m : members_) m->reset(rng);
}

void StrategyBag::perturb(double epsilon, Rng& rng) {
  for (auto& m : members_) m->perturb(epsilon, rng);
}

std::unique_ptr<Strategy> StrategyBag::clone() const {
  return std::make_unique<StrategyBag>(*this);
}

nlohmann::json StrategyBag::snapshot() const {
  auto out = Strategy::snapshot();
  out["mode"] = std::string(to_string(mode_));
  out["active"] = active_ ? nlohmann::json(*active_) : nlohmann::json(nullptr);
  out["members"] = nlohmann::json::array();
  for (const auto& m : members_) out["members"].push_back(m->snapshot());
  return out;
}

// Catalog

namespace {

bool simultaneous(const GameAxes& axes) {
  return axes.moves == MoveMode::kSimultaneous;
}

}  // namespace

const std::vector<StrategyDescriptor>& strategy_catalog() {
  static const std::vector<StrategyDescriptor> catalog = {
      {"Random", "uniform draw over the game's choices", {},
       "any simultaneous game", simultaneous},
      {"FixedChoice", "always plays the same choice",
       {{"choice", "integer", "0 <= choice < q of every game played", "0"}},
       "any simultaneous game whose choice count exceeds `choice`",
       simultaneous},
      {"TitForTat",
       "opens cooperatively, then echoes the other players' last moves", {},
       "any simultaneous game", simultaneous},
      {"BestPlay",
       "lookup tables indexed by the base-q code of the last m outcomes",
       {{"memory", "integer", "memory >= 1, q^memory <= 1048576", "3"},
        {"pool", "integer", "pool >= 1", "1"}},
       "any simultaneous game", simultaneous},
      {"StrategyBag", "plays one member strategy per game",
       {{"mode", "string", "fixed | random", "random"},
        {"members", "array", "non-empty list of {strategy, params}", ""},
        {"mapping", "object", "game type -> member index (fixed mode)", "{}"}},
       "games every member applies to",
       simultaneous},
  };
  return catalog;
}

const StrategyDescriptor* find_strategy(std::string_view name) {
  for (const auto& d : strategy_catalog()) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

std::unique_ptr<Strategy> make_strategy(const StrategyConfig& config) {
  if (config.name == "Random") return std::make_unique<RandomStrategy>();
  if (config.name == "FixedChoice") {
    return std::make_unique<FixedChoiceStrategy>(config.choice);
  }
  if (config.name == "TitForTat") return std::make_unique<TitForTatStrategy>();
  if (config.name == "BestPlay") {
    if (config.memory < 1 || config.pool < 1) {
      throw Error(Errc::kInvalidArgument,
                  "BestPlay needs memory >= 1 and pool >= 1");
    }
    return std::make_unique<BestPlayStrategy>(config.memory, config.pool);
  }
  if (config.name == "StrategyBag") {
    std::vector<std::unique_ptr<Strategy>> members;
    for (const auto& m : config.members) members.push_back(make_strategy(m));
    return std::make_unique<StrategyBag>(config.bag_mode, std::move(members),
                                         config.mapping);
  }
  throw Error(Errc::kInvalidArgument, "unknown strategy '" + config.name + "'");
}

}  // namespace tourney
