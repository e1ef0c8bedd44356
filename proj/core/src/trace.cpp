#include "tourney/trace.hpp"

#include <array>
#include <ostream>
#include <set>

namespace tourney {

namespace {

constexpr std::array<std::string_view, 9> kStageNames = {
    "StartTournament", "CreateGame",      "StartRound",
    "MakeMove",        "GenerateOutcome", "UpdateStrategy",
    "CollectStatistics", "AdaptStrategy", "EndTournament",
};

}  // namespace

std::string_view to_string(Stage stage) {
  return kStageNames[static_cast<std::size_t>(stage)];
}

std::optional<Stage> parse_stage(std::string_view text) {
  for (std::size_t i = 0; i < kStageNames.size(); ++i) {
    if (kStageNames[i] == text) return static_cast<Stage>(i);
  }
  return std::nullopt;
}

bool TraceEvent::same_event(const TraceEvent& other) const {
  return seq == other.seq && stage == other.stage && game == other.game &&
         round == other.round && agent == other.agent &&
         detail == other.detail;
}

EventTrace::EventTrace(bool record_time)
    : record_time_(record_time), start_(std::chrono::steady_clock::now()) {}

void EventTrace::append(Stage stage, std::optional<std::uint32_t> game,
                        std::optional<std::uint32_t> round,
                        std::optional<AgentId> agent, nlohmann::json detail) {
  TraceEvent event;
  event.seq = events_.size();
  event.stage = stage;
  event.game = game;
  event.round = round;
  event.agent = agent;
  event.detail = std::move(detail);
  if (record_time_) {
    event.elapsed_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                           std::chrono::steady_clock::now() - start_)
                           .count();
  }
  events_.push_back(std::move(event));
}

void EventTrace::write_jsonl(std::ostream& out, bool with_time) const {
  for (const auto& e : events_) {
    nlohmann::ordered_json line;
    line["seq"] = e.seq;
    line["stage"] = std::string(to_string(e.stage));
    if (e.game) line["game"] = *e.game;
    if (e.round) line["round"] = *e.round;
    if (e.agent) line["agent"] = e.agent->str();
    if (!e.detail.is_null()) line["detail"] = e.detail;
    if (with_time) line["elapsed_ns"] = e.elapsed_ns;
    out << line.dump() << '\n';
  }
}

bool EventTrace::same_events(const EventTrace& other) const {
  if (events_.size() != other.events_.size()) return false;
  for (std::size_t i = 0; i < events_.size(); ++i) {
    if (!events_[i].same_event(other.events_[i])) return false;
  }
  return true;
}

std::vector<std::string> verify_stage_order(const EventTrace& trace) {
  std::vector<std::string> errors;
  const auto& events = trace.events();
  const auto fail = [&errors](std::size_t at, const std::string& what) {
    errors.push_back("event " + std::to_string(at) + ": " + what);
  };
  if (events.empty()) {
    errors.push_back("trace is empty");
    return errors;
  }

  enum class Expect {
    kStart,          // StartTournament
    kGameOrEnd,      // CreateGame | EndTournament
    kGameOnly,       // CreateGame (after AdaptStrategy)
    kRound,          // StartRound (first round of a game)
    kMoveOrOutcome,  // MakeMove | GenerateOutcome
    kUpdate,         // UpdateStrategy
    kAfterRound,     // UpdateStrategy | StartRound | CollectStatistics
    kAfterGame,      // AdaptStrategy | CreateGame | EndTournament
    kDone,
  };

  Expect expect = Expect::kStart;
  std::uint32_t next_game = 0;
  std::uint32_t game = 0;
  std::uint32_t next_round = 0;
  std::set<AgentId> movers;
  std::set<AgentId> updaters;
  std::optional<std::set<AgentId>> seated;

  const auto check_game = [&](std::size_t i, const TraceEvent& e) {
    if (e.game != game) fail(i, "event belongs to the wrong game");
  };
  const auto begin_game = [&](std::size_t i, const TraceEvent& e) {
    if (e.game != next_game) {
      fail(i, "expected CreateGame for game " + std::to_string(next_game));
    }
    game = next_game++;
    next_round = 0;
    seated.reset();
    expect = Expect::kRound;
  };
  const auto begin_round = [&](std::size_t i, const TraceEvent& e) {
    check_game(i, e);
    if (e.round != next_round) {
      fail(i, "expected StartRound " + std::to_string(next_round));
    }
    ++next_round;
    movers.clear();
    updaters.clear();
    expect = Expect::kMoveOrOutcome;
  };
  const auto finish_updates = [&](std::size_t i) {
    if (updaters != movers) {
      fail(i, "UpdateStrategy agents differ from MakeMove agents");
    }
  };

  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto& e = events[i];
    const auto stage = e.stage;
    switch (expect) {
      case Expect::kStart:
        if (stage != Stage::kStartTournament) {
          fail(i, "trace must open with StartTournament");
        }
        expect = Expect::kGameOrEnd;
        break;
      case Expect::kGameOrEnd:
      case Expect::kGameOnly:
      case Expect::kAfterGame:
        if (stage == Stage::kCreateGame) {
          begin_game(i, e);
        } else if (stage == Stage::kEndTournament &&
                   expect != Expect::kGameOnly) {
          if (next_game == 0) fail(i, "tournament ended without any game");
          expect = Expect::kDone;
        } else if (stage == Stage::kAdaptStrategy &&
                   expect == Expect::kAfterGame) {
          expect = Expect::kGameOnly;
        } else {
          fail(i, std::string("unexpected ") + std::string(to_string(stage)) +
                      " between games");
        }
        break;
      case Expect::kRound:
        if (stage != Stage::kStartRound) {
          fail(i, std::string("expected StartRound, got ") +
                      std::string(to_string(stage)));
          break;
        }
        begin_round(i, e);
        break;
      case Expect::kMoveOrOutcome:
        check_game(i, e);
        if (stage == Stage::kMakeMove) {
          if (e.round != next_round - 1) fail(i, "MakeMove for the wrong round");
          if (!e.agent || !movers.insert(*e.agent).second) {
            fail(i, "MakeMove without a distinct agent");
          }
        } else if (stage == Stage::kGenerateOutcome) {
          if (movers.empty()) fail(i, "GenerateOutcome before any MakeMove");
          if (seated && *seated != movers) {
            fail(i, "players changed within a game");
          }
          seated = movers;
          expect = Expect::kUpdate;
        } else {
          fail(i, std::string("unexpected ") + std::string(to_string(stage)) +
                      " before GenerateOutcome");
        }
        break;
      case Expect::kUpdate:
      case Expect::kAfterRound:
        if (stage == Stage::kUpdateStrategy) {
          check_game(i, e);
          if (!e.agent || !updaters.insert(*e.agent).second) {
            fail(i, "UpdateStrategy without a distinct agent");
          }
          expect = Expect::kAfterRound;
        } else if (expect == Expect::kAfterRound &&
                   stage == Stage::kStartRound) {
          finish_updates(i);
          begin_round(i, e);
        } else if (expect == Expect::kAfterRound &&
                   stage == Stage::kCollectStatistics) {
          finish_updates(i);
          check_game(i, e);
          expect = Expect::kAfterGame;
        } else {
          fail(i, std::string("unexpected ") + std::string(to_string(stage)) +
                      " after GenerateOutcome");
        }
        break;
      case Expect::kDone:
        fail(i, "event after EndTournament");
        break;
    }
  }
  if (expect != Expect::kDone) {
    errors.push_back("trace does not end with EndTournament");
  }
  return errors;
}

}  // namespace tourney
