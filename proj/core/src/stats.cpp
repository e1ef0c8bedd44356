#include "tourney/stats.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <tuple>

#include "tourney/error.hpp"

namespace tourney {

namespace {

auto order_key(const StatsRecord& r) {
  return std::make_tuple(r.game_index, r.round, r.agent);
}

}  // namespace

void StatsSink::record_round(std::vector<StatsRecord> records) {
  for (std::size_t i = 0; i < records.size(); ++i) {
    const bool ordered =
        i == 0 ? records_.empty() ||
                     order_key(records_.back()) < order_key(records[0])
               : order_key(records[i - 1]) < order_key(records[i]);
    if (!ordered) {
      const auto& r = records[i];
      throw Error(Errc::kOrderViolation,
                  "record (game " + std::to_string(r.game_index) + ", round " +
                      std::to_string(r.round) + ", agent " + r.agent.str() +
                      ") does not follow the previous record");
    }
  }
  for (auto& r : records) {
    auto& total = totals_[r.agent];
    total += r.payoff;
    r.cumulative_payoff = total;
    records_.push_back(std::move(r));
  }
}

double StatsSink::total(AgentId agent) const {
  const auto it = totals_.find(agent);
  return it == totals_.end() ? 0.0 : it->second;
}

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  std::string s(buf);
  const auto dot = s.find('.');
  if (dot != std::string::npos) {
    auto end = s.find_last_not_of('0');
    if (end == dot) --end;
    s.erase(end + 1);
  }
  if (s == "-0") s = "0";
  return s;
}

void write_records_csv(std::ostream& out,
                       std::span<const StatsRecord> records) {
  out << kRecordsHeader << '\n';
  for (const auto& r : records) {
    out << r.tournament_id << ',' << r.game_index << ','
        << to_string(r.game_type) << ',' << r.round << ',' << r.agent.str()
        << ',' << r.strategy << ',' << r.move << ',' << format_real(r.payoff)
        << ',' << format_real(r.cumulative_payoff) << '\n';
  }
}

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  if (text.empty()) return false;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

std::vector<StatsRecord> read_records_csv(std::istream& in) {
  std::vector<StatsRecord> out;
  std::string line;
  std::size_t line_no = 0;
  std::size_t last_good = 0;
  const auto malformed = [&](const std::string& why) {
    return Error(Errc::kMalformedData,
                 "records line " + std::to_string(line_no) + ": " + why +
                     " (last good line: " + std::to_string(last_good) + ")");
  };

  if (!std::getline(in, line)) {
    line_no = 1;
    throw malformed("file is empty");
  }
  line_no = 1;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRecordsHeader) throw malformed("unexpected header");
  last_good = 1;

  while (true) {
    const bool got = static_cast<bool>(std::getline(in, line));
    if (!got) break;
    ++line_no;
    const bool terminated = !in.eof();
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (!terminated) break;
      throw malformed("empty line");
    }
    const auto f = split(line);
    if (f.size() != 9) {
      throw malformed("expected 9 fields, got " + std::to_string(f.size()));
    }
    StatsRecord r;
    r.tournament_id = std::string(f[0]);
    const auto type = parse_game_type(f[2]);
    const auto agent = AgentId::parse(f[4]);
    if (!parse_number(f[1], r.game_index)) throw malformed("bad game_index");
    if (!type) throw malformed("bad game_type '" + std::string(f[2]) + "'");
    r.game_type = *type;
    if (!parse_number(f[3], r.round)) throw malformed("bad round");
    if (!agent) throw malformed("bad agent_id '" + std::string(f[4]) + "'");
    r.agent = *agent;
    r.strategy = std::string(f[5]);
    if (r.strategy.empty()) throw malformed("empty strategy");
    if (!parse_number(f[6], r.move)) throw malformed("bad move");
    if (!parse_number(f[7], r.payoff)) throw malformed("bad payoff");
    if (!parse_number(f[8], r.cumulative_payoff)) {
      throw malformed("bad cumulative_payoff");
    }
    if (!terminated) throw malformed("row is not newline-terminated");
    out.push_back(std::move(r));
    last_good = line_no;
  }
  return out;
}

std::optional<MinorityGameStats> minority_game_stats(
    std::span<const StatsRecord> records, std::uint32_t game_index,
    std::uint32_t skip_rounds) {
  // round -> (attendance, winners, players)
  std::map<std::uint32_t, std::array<std::uint64_t, 3>> per_round;
  for (const auto& r : records) {
    if (r.game_index != game_index || r.game_type != GameType::kMg ||
        r.round < skip_rounds) {
      continue;
    }
    auto& row = per_round[r.round];
    row[0] += r.move == 1 ? 1 : 0;
    row[1] += r.payoff > 0 ? 1 : 0;
    row[2] += 1;
  }
  if (per_round.empty()) return std::nullopt;

  MinorityGameStats s;
  s.game_index = game_index;
  s.rounds = static_cast<std::uint32_t>(per_round.size());
  s.players = static_cast<std::uint32_t>(per_round.begin()->second[2]);
  double sum = 0;
  double sum_sq = 0;
  double winners = 0;
  for (const auto& [round, row] : per_round) {
    const auto a = static_cast<double>(row[0]);
    sum += a;
    sum_sq += a * a;
    winners += static_cast<double>(row[1]);
  }
  const double t = s.rounds;
  s.mean_attendance = sum / t;
  s.attendance_variance =
      std::max(0.0, sum_sq / t - s.mean_attendance * s.mean_attendance);
  s.volatility = s.attendance_variance / s.players;
  s.mean_winners = winners / t;
  return s;
}

SummaryTable summarize(std::span<const StatsRecord> records) {
  SummaryTable summary;
  std::map<AgentId, AgentTotal> agents;
  std::map<std::pair<std::string, GameType>, std::pair<std::uint64_t, double>>
      means;
  std::map<std::uint32_t, bool> mg_games;
  for (const auto& r : records) {
    auto& a = agents[r.agent];
    a.agent = r.agent;
    a.strategy = r.strategy;
    a.rounds += 1;
    a.total += r.payoff;
    auto& m = means[{r.strategy, r.game_type}];
    m.first += 1;
    m.second += r.payoff;
    if (r.game_type == GameType::kMg) mg_games[r.game_index] = true;
  }
  for (auto& [id, a] : agents) summary.agents.push_back(std::move(a));
  for (const auto& [key, m] : means) {
    summary.strategy_means.push_back(
        {key.first, key.second, m.first, m.second / m.first});
  }
  for (const auto& [game, unused] : mg_games) {
    if (auto s = minority_game_stats(records, game)) {
      summary.minority_games.push_back(*s);
    }
  }
  return summary;
}

void write_summary_csv(std::ostream& out, const SummaryTable& summary) {
  out << "section,subject,game_type,metric,value\n";
  for (const auto& a : summary.agents) {
    out << "agent," << a.agent.str() << ",,strategy," << a.strategy << '\n';
    out << "agent," << a.agent.str() << ",,rounds," << a.rounds << '\n';
    out << "agent," << a.agent.str() << ",,total_payoff,"
        << format_real(a.total) << '\n';
  }
  for (const auto& m : summary.strategy_means) {
    out << "strategy," << m.strategy << ',' << to_string(m.game_type)
        << ",mean_payoff_per_round," << format_real(m.mean_payoff) << '\n';
  }
  for (const auto& g : summary.minority_games) {
    const auto subject = "game" + std::to_string(g.game_index);
    out << "minority_game," << subject << ",MG,players," << g.players << '\n';
    out << "minority_game," << subject << ",MG,rounds," << g.rounds << '\n';
    out << "minority_game," << subject << ",MG,mean_attendance,"
        << format_real(g.mean_attendance) << '\n';
    out << "minority_game," << subject << ",MG,volatility,"
        << format_real(g.volatility) << '\n';
    out << "minority_game," << subject << ",MG,mean_winners,"
        << format_real(g.mean_winners) << '\n';
  }
}

void print_summary(std::ostream& out, const SummaryTable& summary) {
  out << "Per-agent totals\n";
  out << std::left << std::setw(8) << "agent" << std::setw(14) << "strategy"
      << std::right << std::setw(8) << "rounds" << std::setw(14) << "total"
      << '\n';
  for (const auto& a : summary.agents) {
    out << std::left << std::setw(8) << a.agent.str() << std::setw(14)
        << a.strategy << std::right << std::setw(8) << a.rounds
        << std::setw(14) << format_real(a.total) << '\n';
  }
  out << "\nMean payoff per round by strategy and game\n";
  out << std::left << std::setw(14) << "strategy" << std::setw(6) << "game"
      << std::right << std::setw(10) << "rows" << std::setw(14) << "mean"
      << '\n';
  for (const auto& m : summary.strategy_means) {
    out << std::left << std::setw(14) << m.strategy << std::setw(6)
        << to_string(m.game_type) << std::right << std::setw(10) << m.samples
        << std::setw(14) << format_real(m.mean_payoff) << '\n';
  }
  if (!summary.minority_games.empty()) {
    out << "\nMinority game attendance\n";
    out << std::left << std::setw(6) << "game" << std::right << std::setw(8)
        << "N" << std::setw(8) << "rounds" << std::setw(16) << "mean_attend"
        << std::setw(14) << "volatility" << std::setw(14) << "mean_winners"
        << '\n';
    for (const auto& g : summary.minority_games) {
      out << std::left << std::setw(6) << g.game_index << std::right
          << std::setw(8) << g.players << std::setw(8) << g.rounds
          << std::setw(16) << format_real(g.mean_attendance) << std::setw(14)
          << format_real(g.volatility) << std::setw(14)
          << format_real(g.mean_winners) << '\n';
    }
  }
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(Errc::kIoFailure, "cannot write " + path.string());
  }
  return out;
}

void close_output(std::ofstream& out, const std::filesystem::path& path) {
  out.close();
  if (!out) throw Error(Errc::kIoFailure, "failed writing " + path.string());
}

}  // namespace

DatasetPaths finalize_dataset(const StatsSink& sink, const EventTrace& trace,
                              const std::filesystem::path& dir,
                              bool with_summary) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw Error(Errc::kIoFailure,
                "cannot create output directory " + dir.string() +
                    (ec ? ": " + ec.message() : ""));
  }
  DatasetPaths paths{dir / "records.csv", dir / "trace.jsonl", std::nullopt};
  {
    auto out = open_output(paths.records);
    write_records_csv(out, sink.records());
    close_output(out, paths.records);
  }
  {
    auto out = open_output(paths.trace);
    trace.write_jsonl(out);
    close_output(out, paths.trace);
  }
  if (with_summary) {
    paths.summary = dir / "summary.csv";
    auto out = open_output(*paths.summary);
    write_summary_csv(out, summarize(sink.records()));
    close_output(out, *paths.summary);
  }
  return paths;
}

}  // namespace tourney
