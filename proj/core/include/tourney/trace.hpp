#pragma once

#include <cstdint>
#include <chrono>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "tourney/types.hpp"

namespace tourney {

enum class Stage {
  kStartTournament,
  kCreateGame,
  kStartRound,
  kMakeMove,
  kGenerateOutcome,
  kUpdateStrategy,
  kCollectStatistics,
  kAdaptStrategy,
  kEndTournament,
};

std::string_view to_string(Stage stage);
std::optional<Stage> parse_stage(std::string_view text);

struct TraceEvent {
  std::uint64_t seq = 0;
  Stage stage = Stage::kStartTournament;
  std::optional<std::uint32_t> game;
  std::optional<std::uint32_t> round;
  std::optional<AgentId> agent;
  nlohmann::json detail;
  // Nanoseconds since the trace was created. Not part of event equality.
  std::int64_t elapsed_ns = 0;

  bool same_event(const TraceEvent& other) const;
};

// Append-only lifecycle log of a tournament.
class EventTrace {
 public:
  explicit EventTrace(bool record_time = true);

  void append(Stage stage, std::optional<std::uint32_t> game = std::nullopt,
              std::optional<std::uint32_t> round = std::nullopt,
              std::optional<AgentId> agent = std::nullopt,
              nlohmann::json detail = nullptr);

  const std::vector<TraceEvent>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }

  // One JSON object per line. Timestamps go in "elapsed_ns" and are left out
  // when `with_time` is false.
  void write_jsonl(std::ostream& out, bool with_time = true) const;

  // Equality over everything except timestamps.
  bool same_events(const EventTrace& other) const;

 private:
  bool record_time_;
  std::chrono::steady_clock::time_point start_;
  std::vector<TraceEvent> events_;
};

// Checks the lifecycle order:
//   StartTournament
//   ( CreateGame
//     ( StartRound MakeMove{n} GenerateOutcome UpdateStrategy{n} )+
//     CollectStatistics
//     AdaptStrategy?   -- only when another game follows
//   )+
//   EndTournament
// with game indices 0,1,2,..., round indices 0,1,2,... per game and the same
// agents moving and updating in every round. Returns one message per
// violation; empty means the trace is well ordered.
std::vector<std::string> verify_stage_order(const EventTrace& trace);

}  // namespace tourney
