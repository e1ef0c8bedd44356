#include "tourney/games.hpp"

#include <algorithm>
#include <sstream>

#include "tourney/error.hpp"

namespace tourney {

std::string_view to_string(GameType type) {
  switch (type) {
    case GameType::kIpd: return "IPD";
    case GameType::kMg: return "MG";
    case GameType::kLpgg: return "LPGG";
  }
  return "?";
}

std::optional<GameType> parse_game_type(std::string_view text) {
  if (text == "IPD") return GameType::kIpd;
  if (text == "MG") return GameType::kMg;
  if (text == "LPGG") return GameType::kLpgg;
  return std::nullopt;
}

std::optional<AgentId> AgentId::parse(std::string_view text) {
  if (text.size() < 2 || text.size() > 10 || text[0] != 'a' || text[1] == '0') {
    return std::nullopt;
  }
  std::uint64_t value = 0;
  for (char c : text.substr(1)) {
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + static_cast<std::uint64_t>(c - '0');
  }
  if (value > 0xffffffffULL) return std::nullopt;
  return AgentId(static_cast<std::uint32_t>(value));
}

std::string_view to_string(MoveMode v) {
  return v == MoveMode::kSimultaneous ? "simultaneous" : "sequential";
}
std::string_view to_string(PayoffMode v) {
  switch (v) {
    case PayoffMode::kFixedMatrix: return "fixed-matrix";
    case PayoffMode::kFixedWinner: return "fixed-winner";
    case PayoffMode::kFormula: return "formula";
  }
  return "?";
}
std::string_view to_string(Identity v) {
  switch (v) {
    case Identity::kKnown: return "known";
    case Identity::kUnknown: return "unknown";
    case Identity::kIrrelevant: return "irrelevant";
  }
  return "?";
}
std::string_view to_string(Communication v) {
  return v == Communication::kNotPossible ? "not-possible" : "possible";
}
std::string_view to_string(Topology v) {
  return v == Topology::kNonSpatial ? "non-spatial" : "spatial";
}

GameAxes default_axes(GameType type, std::uint32_t player_count) {
  GameAxes axes;
  axes.player_count = player_count;
  switch (type) {
    case GameType::kIpd:
      axes.payoff = PayoffMode::kFixedMatrix;
      axes.identity = Identity::kKnown;
      break;
    case GameType::kMg:
      axes.payoff = PayoffMode::kFixedWinner;
      axes.identity = Identity::kIrrelevant;
      break;
    case GameType::kLpgg:
      axes.payoff = PayoffMode::kFormula;
      axes.identity = Identity::kKnown;
      break;
  }
  return axes;
}

GameSpec make_ipd(std::uint32_t rounds, IpdParams params) {
  return GameSpec{GameType::kIpd, default_axes(GameType::kIpd, 2), rounds,
                  params};
}

GameSpec make_mg(std::uint32_t player_count, std::uint32_t rounds) {
  return GameSpec{GameType::kMg, default_axes(GameType::kMg, player_count),
                  rounds, MgParams{}};
}

GameSpec make_lpgg(std::uint32_t player_count, std::uint32_t rounds,
                   LpggParams params) {
  return GameSpec{GameType::kLpgg,
                  default_axes(GameType::kLpgg, player_count), rounds, params};
}

namespace {

std::string num(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

const LpggParams& lpgg(const GameSpec& spec) {
  return std::get<LpggParams>(spec.params);
}

}  // namespace

std::vector<RuleViolation> validate_game_spec(const GameSpec& spec) {
  std::vector<RuleViolation> out;
  const auto add = [&out](std::string field, std::string message) {
    out.push_back({std::move(field), std::move(message)});
  };
  const auto& axes = spec.axes;
  if (axes.moves != MoveMode::kSimultaneous) {
    add("params/moves", "only simultaneous moves are supported, got sequential");
  }
  if (axes.communication != Communication::kNotPossible) {
    add("params/communication",
        "communication between players is not supported, got possible");
  }
  if (axes.topology != Topology::kNonSpatial) {
    add("params/topology", "only non-spatial topology is supported, got spatial");
  }
  if (spec.rounds < 1) {
    add("rounds", "rounds must be at least 1, got " +
                  std::to_string(spec.rounds));
  }
  const auto n = axes.player_count;
  switch (spec.type) {
    case GameType::kIpd: {
      if (!std::holds_alternative<IpdParams>(spec.params)) {
        add("params", "IPD requires IPD parameters");
        break;
      }
      const auto& m = std::get<IpdParams>(spec.params);
      if (n != 2) {
        add("players", "IPD requires exactly 2 players, got " +
                      std::to_string(n));
      }
      if (!(m.t > m.r && m.r > m.p && m.p > m.s)) {
        add("params", "T > R > P > S violated (T=" + num(m.t) +
                      ", R=" + num(m.r) + ", P=" + num(m.p) +
                      ", S=" + num(m.s) + ")");
      }
      if (!(2 * m.r > m.t + m.s)) {
        add("params", "2R > T + S violated (2R=" + num(2 * m.r) +
                      ", T+S=" + num(m.t + m.s) + ")");
      }
      if (axes.payoff != PayoffMode::kFixedMatrix) {
        add("params", "IPD payoff mode must be fixed-matrix");
      }
      break;
    }
    case GameType::kMg:
      if (!std::holds_alternative<MgParams>(spec.params)) {
        add("params", "MG requires MG parameters");
        break;
      }
      if (n % 2 == 0) {
        add("players", "MG requires odd playerCount, got " + std::to_string(n));
      } else if (n < 3) {
        add("players", "MG requires at least 3 players, got " +
                      std::to_string(n));
      }
      if (axes.payoff != PayoffMode::kFixedWinner) {
        add("params", "MG payoff mode must be fixed-winner");
      }
      break;
    case GameType::kLpgg: {
      if (!std::holds_alternative<LpggParams>(spec.params)) {
        add("params", "LPGG requires LPGG parameters");
        break;
      }
      const auto& p = lpgg(spec);
      if (n < 2) {
        add("players", "LPGG requires at least 2 players, got " +
                      std::to_string(n));
      }
      if (p.endowment < 1) {
        add("params/endowment", "LPGG endowment must be at least 1");
      }
      if (n >= 1 && !(p.mpcr > 1.0 / n && p.mpcr < 1.0)) {
        add("params/mpcr", "LPGG requires 1/playerCount < mpcr < 1, got mpcr=" +
                      num(p.mpcr) + " with playerCount=" + std::to_string(n));
      }
      if (axes.payoff != PayoffMode::kFormula) {
        add("params", "LPGG payoff mode must be formula");
      }
      break;
    }
  }
  return out;
}

std::uint32_t num_choices(const GameSpec& spec) {
  switch (spec.type) {
    case GameType::kIpd:
    case GameType::kMg:
      return 2;
    case GameType::kLpgg:
      return lpgg(spec).endowment + 1;
  }
  return 2;
}

Choice cooperative_choice(const GameSpec& spec) {
  return spec.type == GameType::kLpgg ? lpgg(spec).endowment : 0;
}

RoundResult resolve_round(const GameSpec& spec,
                          const std::map<AgentId, Choice>& moves,
                          std::uint32_t round_index) {
  if (moves.size() != spec.axes.player_count) {
    throw Error(Errc::kParticipantMismatch,
                "expected " + std::to_string(spec.axes.player_count) +
                    " moves, got " + std::to_string(moves.size()));
  }
  const auto q = num_choices(spec);
  for (const auto& [agent, move] : moves) {
    if (move >= q) {
      throw Error(Errc::kInvalidMove, "agent " + agent.str() + " played " +
                                          std::to_string(move) +
                                          " in a game with " +
                                          std::to_string(q) + " choices");
    }
  }

  RoundResult result;
  result.round_index = round_index;
  result.moves = moves;

  switch (spec.type) {
    case GameType::kIpd: {
      const auto& m = std::get<IpdParams>(spec.params);
      const auto first = moves.begin();
      const auto second = std::next(first);
      const auto cell = [&m](Choice own, Choice other) {
        if (own == 0) return other == 0 ? m.r : m.s;
        return other == 0 ? m.t : m.p;
      };
      result.payoffs[first->first] = cell(first->second, second->second);
      result.payoffs[second->first] = cell(second->second, first->second);
      result.outcome_symbol = first->second;
      break;
    }
    case GameType::kMg: {
      std::uint32_t ones = 0;
      for (const auto& [agent, move] : moves) ones += move;
      const auto zeros = static_cast<std::uint32_t>(moves.size()) - ones;
      const Choice minority = zeros < ones ? 0 : 1;
      for (const auto& [agent, move] : moves) {
        result.payoffs[agent] = move == minority ? 1.0 : 0.0;
      }
      result.outcome_symbol = minority;
      break;
    }
    case GameType::kLpgg: {
      const auto& p = lpgg(spec);
      std::uint64_t total = 0;
      for (const auto& [agent, move] : moves) total += move;
      const double pot = p.mpcr * static_cast<double>(total);
      for (const auto& [agent, move] : moves) {
        result.payoffs[agent] =
            static_cast<double>(p.endowment) - static_cast<double>(move) + pot;
      }
      // Round half up on the exact rational mean.
      const std::uint64_t n = moves.size();
      const std::uint64_t rounded = (2 * total + n) / (2 * n);
      result.outcome_symbol = static_cast<Choice>(
          std::min<std::uint64_t>(rounded, p.endowment));
      break;
    }
  }
  return result;
}

Pseudonyms::Pseudonyms(std::vector<AgentId> participants, Rng& rng) {
  std::sort(participants.begin(), participants.end());
  rng.shuffle(std::span<AgentId>(participants));
  for (std::size_t i = 0; i < participants.size(); ++i) {
    labels_[participants[i]] = "p" + std::to_string(i + 1);
  }
}

std::string Pseudonyms::label(AgentId agent) const {
  const auto it = labels_.find(agent);
  if (it == labels_.end()) {
    throw Error(Errc::kNotAParticipant,
                "no pseudonym for agent " + agent.str());
  }
  return it->second;
}

RoundDisclosure::RoundDisclosure(const RoundResult& result,
                                 const GameSpec& spec,
                                 const Pseudonyms* pseudonyms)
    : result_(result), spec_(spec), pseudonyms_(pseudonyms) {
  if (spec.axes.identity == Identity::kIrrelevant) {
    counts_.assign(num_choices(spec), 0);
    for (const auto& [agent, move] : result.moves) ++counts_[move];
    return;
  }
  if (spec.axes.identity == Identity::kUnknown && pseudonyms_ == nullptr) {
    std::vector<AgentId> ids;
    for (const auto& [agent, move] : result.moves) ids.push_back(agent);
    // Without a game generator the labels follow id order; the engine always
    // supplies shuffled ones.
    owned_ = std::make_unique<Pseudonyms>();
    Rng identity_rng(0);
    *owned_ = Pseudonyms(ids, identity_rng);
    pseudonyms_ = owned_.get();
  }
  auto moves = std::make_shared<std::vector<RevealedMove>>();
  moves->reserve(result.moves.size());
  for (const auto& [agent, move] : result.moves) {
    moves->push_back({label_of(agent), move});
  }
  if (spec.axes.identity == Identity::kUnknown) {
    std::sort(moves->begin(), moves->end(),
              [](const RevealedMove& a, const RevealedMove& b) {
                return a.label.size() != b.label.size()
                           ? a.label.size() < b.label.size()
                           : a.label < b.label;
              });
  }
  moves_ = std::move(moves);
}

std::string RoundDisclosure::label_of(AgentId agent) const {
  if (spec_.axes.identity == Identity::kUnknown) {
    return pseudonyms_->label(agent);
  }
  return agent.str();
}

ViewerOutcome RoundDisclosure::view_for(AgentId viewer) const {
  const auto move = result_.moves.find(viewer);
  if (move == result_.moves.end()) {
    throw Error(Errc::kNotAParticipant,
                "agent " + viewer.str() + " did not play round " +
                    std::to_string(result_.round_index));
  }
  ViewerOutcome view;
  view.round_index = result_.round_index;
  view.own_move = move->second;
  view.own_payoff = result_.payoffs.at(viewer);
  view.outcome_symbol = result_.outcome_symbol;
  if (spec_.type == GameType::kIpd) {
    for (const auto& [agent, choice] : result_.moves) {
      if (agent != viewer) view.outcome_symbol = choice;
    }
  }
  if (moves_) {
    view.moves = moves_;
    view.self_label = label_of(viewer);
  } else {
    view.choice_counts = counts_;
  }
  return view;
}

}  // namespace tourney
