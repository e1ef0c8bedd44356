#include <benchmark/benchmark.h>

#include "tourney/engine.hpp"

namespace {

using namespace tourney;

TournamentPlan minority_plan(std::uint32_t n, std::uint32_t rounds,
                             StrategyConfig strategy) {
  TournamentPlan plan;
  plan.seed = 7;
  plan.agents = {{n, std::move(strategy)}};
  plan.games = {{make_mg(n, rounds), {}}};
  return plan;
}

void run(benchmark::State& state, const TournamentPlan& plan) {
  RunOptions options;
  options.record_wall_time = false;
  options.verify_trace = false;
  std::uint64_t rounds = 0;
  for (auto _ : state) {
    auto reg = build_registry(plan);
    auto art = run_tournament(plan, reg, options);
    benchmark::DoNotOptimize(art.stats.records().data());
    for (const auto& g : plan.games) rounds += g.spec.rounds;
  }
  state.counters["rounds/s"] =
      benchmark::Counter(static_cast<double>(rounds), benchmark::Counter::kIsRate);
}

void BM_MinorityRandom(benchmark::State& state) {
  run(state, minority_plan(static_cast<std::uint32_t>(state.range(0)), 200,
                           {.name = "Random"}));
}
BENCHMARK(BM_MinorityRandom)->Arg(11)->Arg(101)->Unit(benchmark::kMillisecond);

void BM_MinorityBestPlay(benchmark::State& state) {
  run(state, minority_plan(101, 200, {.name = "BestPlay", .memory = 5, .pool = 2}));
}
BENCHMARK(BM_MinorityBestPlay)->Unit(benchmark::kMillisecond);

void BM_MixedTournament(benchmark::State& state) {
  TournamentPlan plan;
  plan.seed = 2018;
  plan.agents = {{3, {.name = "Random"}},
                 {4, {.name = "TitForTat"}},
                 {3, {.name = "BestPlay", .memory = 3, .pool = 2}}};
  plan.games = {{make_mg(9, 100), {SelectionMode::kRandom, {}, 9}},
                {make_ipd(100), {SelectionMode::kRandom, {}, 2}},
                {make_lpgg(4, 100, {10, 0.5}), {SelectionMode::kRandom, {}, 4}}};
  plan.adaptation = {AdaptationKind::kImitateBest, 0.2, 0.05, false};
  run(state, plan);
}
BENCHMARK(BM_MixedTournament)->Unit(benchmark::kMillisecond);

}  // namespace
