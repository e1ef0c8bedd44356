// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "tourney/codec.hpp"
#include "tourney/config.hpp"
#include "tourney/engine.hpp"

namespace fs = std::filesystem;
using namespace tourney;

namespace {

const fs::path kConfigs = TOURNEY_CONFIG_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

RunOptions quiet() {
  RunOptions o;
  o.record_wall_time = false;
  return o;
}

AgentGroup group(std::uint32_t count, StrategyConfig s) {
  return {count, std::move(s)};
}

// 1
Outcome encoding_fidelity() {
  Outcome o;
  const auto start = Clock::now();
  const std::vector<Choice> fig{0, 1, 0};
  const std::vector<Choice> ternary{2, 2, 2};
  const auto a = codec::encode_history(fig, 2);
  const auto b = codec::encode_history(ternary, 3);
  const double elapsed = seconds_since(start);
  o.require(a == 2, "[0,1,0] q=2 gave " + std::to_string(a));
  o.require(b == 26, "[2,2,2] q=3 gave " + std::to_string(b));
  o.require(elapsed < 1e-3, "took " + fmt(elapsed * 1e3) + " ms");
  if (o.pass) o.detail = "2 and 26 in " + fmt(elapsed * 1e6, 1) + " us";
  return o;
}

// 2
Outcome codec_roundtrip() {
  Outcome o;
  const auto start = Clock::now();
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  for (std::uint32_t q = 2; q <= 5; ++q) {
    for (std::uint32_t m = 1; m <= 4; ++m) {
      const auto len = codec::table_length(q, m);
      if (len > 4096) continue;
      for (std::uint64_t i = 0; i < len; ++i) {
        const auto window = codec::decode_index(i, q, m);
        if (codec::encode_history(window) != i) ++failures;
        ++checked;
      }
    }
  }
  const double elapsed = seconds_since(start);
  o.require(failures == 0, std::to_string(failures) + " failures");
  o.require(elapsed < 1.0, "took " + fmt(elapsed) + " s");
  if (o.pass) {
    o.detail = std::to_string(checked) + " indices, 0 failures in " +
               fmt(elapsed * 1e3, 2) + " ms";
  }
  return o;
}

// 3
Outcome ipd_traces() {
  Outcome o;
  const auto play = [](StrategyConfig first, StrategyConfig second) {
    TournamentPlan plan;
    plan.agents = {group(1, std::move(first)), group(1, std::move(second))};
    plan.games = {{make_ipd(100), {}}};
    auto reg = build_registry(plan);
    const auto art = run_tournament(plan, reg, quiet());
    return std::pair(art.stats.total(AgentId(1)), art.stats.total(AgentId(2)));
  };
  const auto tft = play({.name = "TitForTat"}, {.name = "TitForTat"});
  // Hand trace: both cooperate every round, R = 3 each.
  o.require(tft.first == 100 * 3.0 && tft.second == 100 * 3.0,
            "TFT/TFT " + fmt(tft.first, 0) + "/" + fmt(tft.second, 0));
  const auto defect =
      play({.name = "FixedChoice", .choice = 1}, {.name = "TitForTat"});
  // Round 1: T/S. Rounds 2..100: P/P.
  const double defector = 5 + 99 * 1.0;
  const double reciprocator = 0 + 99 * 1.0;
  o.require(defect.first == defector && defect.second == reciprocator,
            "Defect/TFT " + fmt(defect.first, 0) + "/" + fmt(defect.second, 0));
  if (o.pass) o.detail = "300/300 and 104/99";
  return o;
}

// Expected minority size for N fair coin flips, summed exactly.
double expected_minority(std::uint32_t n) {
  double e = 0;
  for (std::uint32_t k = 0; k <= n; ++k) {
    const double log_p = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                         std::lgamma(n - k + 1.0) - n * std::log(2.0);
    e += std::exp(log_p) * std::min(k, n - k);
  }
  return e;
}

// 4
Outcome minority_invariants() {
  Outcome o;
  const auto start = Clock::now();
  const std::uint32_t n = 101;
  TournamentPlan plan;
  plan.seed = 20180101;
  plan.agents = {group(n, {.name = "Random"})};
  plan.games = {{make_mg(n, 1000), {}}};
  auto reg = build_registry(plan);
  const auto art = run_tournament(plan, reg, quiet());

  std::map<std::uint32_t, std::uint32_t> winners;
  bool payoffs_ok = true;
  for (const auto& r : art.stats.records()) {
    if (r.payoff > 0) ++winners[r.round];
    if (r.payoff != 0 && r.payoff != 1) payoffs_ok = false;
  }
  std::uint64_t total = 0;
  bool fewer_than_half = true;
  for (const auto& [round, w] : winners) {
    total += w;
    if (2 * w >= n) fewer_than_half = false;
  }
  const double mean = static_cast<double>(total) / 1000;
  const double oracle = expected_minority(n);
  const double elapsed = seconds_since(start);
  o.require(fewer_than_half, "a round had >= N/2 winners");
  o.require(payoffs_ok, "a payoff other than 0 or +1");
  o.require(mean >= 45 && mean <= 48, "mean winners " + fmt(mean));
  o.require(oracle >= 45 && oracle <= 48, "oracle " + fmt(oracle));
  o.require(elapsed < 5, "took " + fmt(elapsed) + " s");
  if (o.pass) {
    o.detail = "mean winners " + fmt(mean, 3) + " (binomial oracle " +
               fmt(oracle, 3) + ") in " + fmt(elapsed, 2) + " s";
  }
  return o;
}

// 5
Outcome best_play_coordination() {
  Outcome o;
  const auto start = Clock::now();
  const auto base = load_tournament_spec(kConfigs / "minority_bestplay.json");
  int better = 0;
  std::string values;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto plan = base;
    plan.seed = seed;
    auto reg = build_registry(plan);
    const auto art = run_tournament(plan, reg, quiet());
    const auto stats = minority_game_stats(art.stats.records(), 0, 200);
    const double v = stats ? stats->volatility : 1.0;
    if (v < 0.25) ++better;
    values += (values.empty() ? "" : " ") + fmt(v, 3);
  }
  const double elapsed = seconds_since(start);
  o.require(better >= 8, std::to_string(better) + "/10 seeds below 0.25 [" +
                             values + "]");
  o.require(elapsed < 60, "took " + fmt(elapsed) + " s");
  if (o.pass) {
    o.detail = std::to_string(better) + "/10 seeds below 0.25, volatility [" +
               values + "] in " + fmt(elapsed, 1) + " s";
  }
  return o;
}

// 6
Outcome lpgg_payoffs() {
  Outcome o;
  const auto spec = make_lpgg(4, 1, {10, 0.5});
  const auto all = resolve_round(
      spec, {{AgentId(1), 10}, {AgentId(2), 10}, {AgentId(3), 10}, {AgentId(4), 10}},
      0);
  // E - c + mpcr * sum: 10 - 10 + 0.5 * 40.
  for (const auto& [id, p] : all.payoffs) {
    o.require(p == 10 - 10 + 0.5 * 40, id.str() + " got " + fmt(p, 2));
  }
  const auto ride = resolve_round(
      spec, {{AgentId(1), 0}, {AgentId(2), 10}, {AgentId(3), 10}, {AgentId(4), 10}},
      0);
  o.require(ride.payoffs.at(AgentId(1)) == 10 - 0 + 0.5 * 30,
            "free rider got " + fmt(ride.payoffs.at(AgentId(1)), 2));
  for (std::uint32_t i = 2; i <= 4; ++i) {
    o.require(ride.payoffs.at(AgentId(i)) == 10 - 10 + 0.5 * 30,
              "contributor got " + fmt(ride.payoffs.at(AgentId(i)), 2));
  }
  if (o.pass) o.detail = "20 each; 25 vs 15/15/15";
  return o;
}

struct BoundaryCheck {
  std::vector<std::map<AgentId, StateChange>> changes;
  std::vector<std::map<AgentId, BestPlayState>> at_start;
  std::vector<std::map<AgentId, BestPlayState>> at_end;
};

std::map<AgentId, BestPlayState> best_play_states(const Registry& reg) {
  std::map<AgentId, BestPlayState> out;
  for (const auto& a : reg.agents()) {
    const auto* bp = dynamic_cast<const BestPlayStrategy*>(a.strategy.get());
    if (bp != nullptr && bp->state()) out.emplace(a.id, *bp->state());
  }
  return out;
}

RunArtifacts run_observed(const TournamentPlan& plan, BoundaryCheck& check) {
  auto reg = build_registry(plan);
  RunOptions options = quiet();
  options.hooks.on_game_start = [&](const GameSession& s, const Registry& r) {
    check.changes.push_back(s.state_changes());
    check.at_start.push_back(best_play_states(r));
  };
  options.hooks.on_game_end = [&](const GameSession&, const Registry& r) {
    check.at_end.push_back(best_play_states(r));
  };
  return run_tournament(plan, reg, options);
}

// 7
Outcome cross_game() {
  Outcome o;
  const auto plan = load_tournament_spec(kConfigs / "mixed_bestplay.json");
  BoundaryCheck check;
  const auto art = run_observed(plan, check);
  o.require(verify_stage_order(art.trace).empty(), "stage order violated");
  o.require(art.stats.records().size() == 100 * 9 + 100 * 2,
            "record count " + std::to_string(art.stats.records().size()));

  std::set<AgentId> adapted;
  for (const auto& e : art.trace.events()) {
    if (e.stage != Stage::kAdaptStrategy) continue;
    for (const auto& id : e.detail["changed"]) {
      adapted.insert(*AgentId::parse(id.get<std::string>()));
    }
  }
  std::size_t persisted = 0;
  if (check.changes.size() == 2 && check.at_end.size() == 2) {
    for (const auto& [id, change] : check.changes[1]) {
      o.require(change == StateChange::kNone,
                id.str() + " " + std::string(to_string(change)) + " at IPD");
    }
    for (const auto& [id, state] : check.at_start[1]) {
      o.require(state.q == 2, id.str() + " q=" + std::to_string(state.q));
      if (adapted.contains(id)) continue;
      const auto before = check.at_end[0].find(id);
      if (before == check.at_end[0].end()) continue;
      o.require(before->second == state, id.str() + " tables changed");
      ++persisted;
    }
  } else {
    o.require(false, "expected two games");
  }
  o.require(persisted > 0, "no BestPlay agent to compare across games");

  const auto variant = load_tournament_spec(kConfigs / "mg_then_lpgg.json");
  BoundaryCheck vcheck;
  const auto vart = run_observed(variant, vcheck);
  o.require(verify_stage_order(vart.trace).empty(), "variant stage order");
  std::size_t resized = 0;
  if (vcheck.changes.size() == 2) {
    for (const auto& [id, state] : vcheck.at_start[1]) {
      const bool r = vcheck.changes[1].at(id) == StateChange::kResized;
      o.require(r && state.q == 11 &&
                    state.tables[0].size() == codec::table_length(11, state.memory),
                id.str() + " not resized to q=11");
      resized += r ? 1 : 0;
    }
  } else {
    o.require(false, "variant expected two games");
  }
  o.require(resized > 0, "no BestPlay agent in the variant");
  if (o.pass) {
    o.detail = "stage order ok; " + std::to_string(persisted) +
               " BestPlay agents kept q=2 tables into IPD; " +
               std::to_string(resized) + " resized 2->11 entering LPGG";
  }
  return o;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli_to(const fs::path& config, const fs::path& out,
               std::optional<std::uint64_t> seed) {
  std::stringstream sink;
  return cli::cmd_run({config, seed, out}, sink, sink);
}

// 8
Outcome determinism(const fs::path& scratch) {
  Outcome o;
  const auto start = Clock::now();
  const auto config = kConfigs / "mg_then_ipd.json";
  const auto a = scratch / "det_a";
  const auto b = scratch / "det_b";
  const auto c = scratch / "det_c";
  o.require(run_cli_to(config, a, std::nullopt) == cli::kExitOk, "run a failed");
  o.require(run_cli_to(config, b, std::nullopt) == cli::kExitOk, "run b failed");
  o.require(run_cli_to(config, c, 2019) == cli::kExitOk, "run c failed");
  const double elapsed = seconds_since(start);
  const auto ra = read_file(a / "records.csv");
  const auto rb = read_file(b / "records.csv");
  const auto rc = read_file(c / "records.csv");
  o.require(!ra.empty() && ra == rb, "same seed gave different records.csv");
  o.require(ra != rc, "different seed gave identical records.csv");
  o.require(elapsed < 10, "took " + fmt(elapsed) + " s");
  if (o.pass) {
    o.detail = "identical " + std::to_string(ra.size()) +
               "-byte records.csv; seed change differs; " + fmt(elapsed, 2) +
               " s for three runs";
  }
  return o;
}

// 9
Outcome validation(const fs::path& scratch) {
  Outcome o;
  const std::vector<std::pair<std::string, std::string>> cases{
      {"mg_even.json", "/games/0/players"},
      {"ipd_bad_matrix.json", "/games/0/params"},
      {"lpgg_bad_mpcr.json", "/games/0/params/mpcr"}};
  for (const auto& [file, where] : cases) {
    const auto path = kConfigs / "invalid" / file;
    std::stringstream out;
    std::stringstream err;
    const int code = cli::cmd_validate(path, out, err);
    o.require(code == cli::kExitInvalid, file + " exit " + std::to_string(code));
    o.require(err.str().find(": " + where + ": ") != std::string::npos,
              file + " diagnostic not located at " + where + ": " + err.str());
    const auto dir = scratch / ("invalid_" + file);
    o.require(run_cli_to(path, dir, std::nullopt) == cli::kExitInvalid,
              file + " run did not exit 1");
    o.require(!fs::exists(dir / "records.csv"), file + " reached execution");
  }
  if (o.pass) o.detail = "3/3 rejected with located diagnostics, no output";
  return o;
}

}  // namespace

int main() {
  const auto scratch = fs::temp_directory_path() / "tourney_acceptance";
  fs::remove_all(scratch);
  fs::create_directories(scratch);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"encoding fidelity", encoding_fidelity},
      {"codec roundtrip", codec_roundtrip},
      {"IPD exact traces", ipd_traces},
      {"minority game invariants", minority_invariants},
      {"BestPlay coordination", best_play_coordination},
      {"LPGG exact payoffs", lpgg_payoffs},
      {"cross-game tournament", cross_game},
      {"determinism", [&] { return determinism(scratch); }},
      {"validation", [&] { return validation(scratch); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += o.pass ? 0 : 1;
    std::printf("[%s] %zu. %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str());
  }
  std::fflush(stdout);
  fs::remove_all(scratch);
  return failed == 0 ? 0 : 1;
}
