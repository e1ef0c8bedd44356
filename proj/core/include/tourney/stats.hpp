#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tourney/trace.hpp"
#include "tourney/types.hpp"

namespace tourney {

// One row per (game, round, agent).
struct StatsRecord {
  std::string tournament_id;
  std::uint32_t game_index = 0;
  GameType game_type = GameType::kIpd;
  std::uint32_t round = 0;
  AgentId agent;
  std::string strategy;
  Choice move = 0;
  double payoff = 0;
  double cumulative_payoff = 0;

  friend bool operator==(const StatsRecord&, const StatsRecord&) = default;
};

inline constexpr std::string_view kRecordsHeader =
    "tournament_id,game_index,game_type,round,agent_id,strategy,move,payoff,"
    "cumulative_payoff";

// Accumulates records for one tournament in (game, round, agent) order and
// keeps each agent's running total.
class StatsSink {
 public:
  // Appends one round's rows, filling in cumulative_payoff. Rows must extend
  // the (game_index, round, agent) order strictly; otherwise nothing is
  // appended and kOrderViolation is thrown.
  void record_round(std::vector<StatsRecord> records);

  const std::vector<StatsRecord>& records() const { return records_; }
  const std::map<AgentId, double>& totals() const { return totals_; }
  double total(AgentId agent) const;

 private:
  std::vector<StatsRecord> records_;
  std::map<AgentId, double> totals_;
};

// Fixed-point with at most 6 fractional digits and no trailing zeros:
// 20 -> "20", 0.5 -> "0.5". Never uses exponent notation.
std::string format_real(double value);

void write_records_csv(std::ostream& out, std::span<const StatsRecord> records);

// Parses records.csv. Throws kMalformedData naming the offending line and
// the last line that parsed cleanly.
std::vector<StatsRecord> read_records_csv(std::istream& in);

struct AgentTotal {
  AgentId agent;
  std::string strategy;
  std::uint64_t rounds = 0;
  double total = 0;
};

struct StrategyGameMean {
  std::string strategy;
  GameType game_type = GameType::kIpd;
  std::uint64_t samples = 0;
  double mean_payoff = 0;
};

// Attendance is the number of players choosing 1 in a round.
struct MinorityGameStats {
  std::uint32_t game_index = 0;
  std::uint32_t players = 0;
  std::uint32_t rounds = 0;
  double mean_attendance = 0;
  double attendance_variance = 0;
  // attendance_variance / players
  double volatility = 0;
  double mean_winners = 0;
};

struct SummaryTable {
  std::vector<AgentTotal> agents;
  std::vector<StrategyGameMean> strategy_means;
  std::vector<MinorityGameStats> minority_games;
};

// Per-round attendance statistics for one MG game, ignoring rounds below
// `skip_rounds`. Returns nullopt when no MG rows remain.
std::optional<MinorityGameStats> minority_game_stats(
    std::span<const StatsRecord> records, std::uint32_t game_index,
    std::uint32_t skip_rounds = 0);

SummaryTable summarize(std::span<const StatsRecord> records);

// Long format: section,subject,game_type,metric,value.
void write_summary_csv(std::ostream& out, const SummaryTable& summary);
void print_summary(std::ostream& out, const SummaryTable& summary);

struct DatasetPaths {
  std::filesystem::path records;
  std::filesystem::path trace;
  std::optional<std::filesystem::path> summary;
};

// Writes records.csv, trace.jsonl and (optionally) summary.csv into `dir`,
// creating it if needed. Throws kIoFailure when anything cannot be written.
DatasetPaths finalize_dataset(const StatsSink& sink, const EventTrace& trace,
                              const std::filesystem::path& dir,
                              bool with_summary);

}  // namespace tourney
