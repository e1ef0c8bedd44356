#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tourney/rng.hpp"
#include "tourney/types.hpp"

namespace tourney {

enum class MoveMode { kSimultaneous, kSequential };
enum class PayoffMode { kFixedMatrix, kFixedWinner, kFormula };
enum class Identity { kKnown, kUnknown, kIrrelevant };
enum class Communication { kNotPossible, kPossible };
enum class Topology { kNonSpatial, kSpatial };

std::string_view to_string(MoveMode v);
std::string_view to_string(PayoffMode v);
std::string_view to_string(Identity v);
std::string_view to_string(Communication v);
std::string_view to_string(Topology v);

// The axes a game is configured along. Only simultaneous, non-communicating,
// non-spatial games can be played; the other values exist so that a
// description asking for them can be rejected by name.
struct GameAxes {
  std::uint32_t player_count = 2;
  MoveMode moves = MoveMode::kSimultaneous;
  PayoffMode payoff = PayoffMode::kFixedMatrix;
  Identity identity = Identity::kKnown;
  Communication communication = Communication::kNotPossible;
  Topology topology = Topology::kNonSpatial;

  friend bool operator==(const GameAxes&, const GameAxes&) = default;
};

// Temptation, reward, punishment, sucker.
struct IpdParams {
  double t = 5;
  double r = 3;
  double p = 1;
  double s = 0;
  friend bool operator==(const IpdParams&, const IpdParams&) = default;
};

struct MgParams {
  friend bool operator==(const MgParams&, const MgParams&) = default;
};

// Endowment in whole points and marginal per-capita return.
struct LpggParams {
  std::uint32_t endowment = 10;
  double mpcr = 0.5;
  friend bool operator==(const LpggParams&, const LpggParams&) = default;
};

using GameParams = std::variant<IpdParams, MgParams, LpggParams>;

struct GameSpec {
  GameType type = GameType::kIpd;
  GameAxes axes;
  std::uint32_t rounds = 1;
  GameParams params = IpdParams{};

  friend bool operator==(const GameSpec&, const GameSpec&) = default;
};

GameAxes default_axes(GameType type, std::uint32_t player_count);
GameSpec make_ipd(std::uint32_t rounds, IpdParams params = {});
GameSpec make_mg(std::uint32_t player_count, std::uint32_t rounds);
GameSpec make_lpgg(std::uint32_t player_count, std::uint32_t rounds,
                   LpggParams params);

struct RuleViolation {
  // Offending key relative to the game's description, e.g. "params/mpcr".
  std::string field;
  std::string message;
};

// Rule violations of `spec`, each naming the rule. Empty means playable.
std::vector<RuleViolation> validate_game_spec(const GameSpec& spec);

// IPD and MG: 2. LPGG: endowment + 1 contribution levels.
std::uint32_t num_choices(const GameSpec& spec);

// The move a reciprocating strategy opens with: cooperate in IPD, 0 in MG,
// full contribution in LPGG.
Choice cooperative_choice(const GameSpec& spec);

struct RoundResult {
  std::uint32_t round_index = 0;
  std::map<AgentId, Choice> moves;
  std::map<AgentId, double> payoffs;
  // MG: the minority side. LPGG: rounded mean contribution. IPD: the move of
  // the lower-numbered agent; each viewer instead sees its opponent's move.
  Choice outcome_symbol = 0;

  friend bool operator==(const RoundResult&, const RoundResult&) = default;
};

// Pure: identical inputs give identical results. Throws kInvalidMove for an
// out-of-range choice and kParticipantMismatch for the wrong number of
// players.
RoundResult resolve_round(const GameSpec& spec,
                          const std::map<AgentId, Choice>& moves,
                          std::uint32_t round_index);

// Per-game labels used when identity is unknown. Labels are p1..pN in an
// order drawn from the game's generator, so they carry no information about
// agent ids and change from game to game.
class Pseudonyms {
 public:
  Pseudonyms() = default;
  Pseudonyms(std::vector<AgentId> participants, Rng& rng);

  std::string label(AgentId agent) const;

 private:
  std::map<AgentId, std::string> labels_;
};

struct RevealedMove {
  std::string label;
  Choice move = 0;
  friend bool operator==(const RevealedMove&, const RevealedMove&) = default;
};

// What one participant learns about a finished round.
struct ViewerOutcome {
  std::uint32_t round_index = 0;
  Choice outcome_symbol = 0;
  Choice own_move = 0;
  double own_payoff = 0;
  // Label under which the viewer's own move appears in `moves`.
  std::string self_label;
  // Every participant's move, shared between viewers of the same round.
  // Null when identity is irrelevant.
  std::shared_ptr<const std::vector<RevealedMove>> moves;
  // Number of players per choice. Filled only when identity is irrelevant.
  std::vector<std::uint32_t> choice_counts;

  bool moves_visible() const { return moves != nullptr; }
};

// Builds the public part of a round's disclosure once and hands out
// per-viewer outcomes. Holds references to `result` and `spec`.
class RoundDisclosure {
 public:
  RoundDisclosure(const RoundResult& result, const GameSpec& spec,
                  const Pseudonyms* pseudonyms = nullptr);

  // Throws kNotAParticipant for an agent that did not play the round.
  ViewerOutcome view_for(AgentId viewer) const;

 private:
  std::string label_of(AgentId agent) const;

  const RoundResult& result_;
  const GameSpec& spec_;
  const Pseudonyms* pseudonyms_;
  std::unique_ptr<Pseudonyms> owned_;
  std::shared_ptr<const std::vector<RevealedMove>> moves_;
  std::vector<std::uint32_t> counts_;
};

inline ViewerOutcome revealed_view(const RoundResult& result,
                                   const GameSpec& spec, AgentId viewer,
                                   const Pseudonyms* pseudonyms = nullptr) {
  return RoundDisclosure(result, spec, pseudonyms).view_for(viewer);
}

}  // namespace tourney
