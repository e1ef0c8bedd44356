#include <gtest/gtest.h>

#include "test_util.hpp"
#include "tourney/adaptation.hpp"
#include "tourney/strategies.hpp"

namespace tourney {
namespace {

using testing::error_code_of;

GameContext mg_context() {
  const auto spec = make_mg(3, 1);
  return {0, spec.type, spec.axes, 2, 0};
}

// n BestPlay agents with tables for q = 2.
Registry best_play_population(std::size_t n, std::uint32_t memory,
                              std::uint32_t pool, std::uint64_t seed) {
  Registry reg;
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    auto s = std::make_unique<BestPlayStrategy>(memory, pool);
    s->begin_game(mg_context(), rng);
    reg.add(std::move(s));
  }
  return reg;
}

std::map<AgentId, double> payoffs(std::vector<double> values) {
  std::map<AgentId, double> out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[AgentId(static_cast<std::uint32_t>(i + 1))] = values[i];
  }
  return out;
}

const BestPlayState& state_of(const Registry& reg, std::uint32_t id) {
  return *dynamic_cast<const BestPlayStrategy&>(*reg.at(AgentId(id)).strategy)
              .state();
}

TEST(Adaptation, BestPerformerTiesToLowestId) {
  EXPECT_EQ(best_performer(payoffs({1, 5, 5, 2})), AgentId(2));
  EXPECT_EQ(best_performer(payoffs({0, 0})), AgentId(1));
  std::map<AgentId, double> sparse{{AgentId(10), 3}, {AgentId(2), 3}};
  EXPECT_EQ(best_performer(sparse), AgentId(2));
}

TEST(Adaptation, NoneIsNoOp) {
  auto reg = best_play_population(4, 3, 2, 1);
  const auto before = reg.snapshot();
  Rng rng(1);
  const auto report = adapt_population(
      reg, {AdaptationKind::kNone, 1.0, 0, false}, payoffs({1, 2, 3, 4}), rng);
  EXPECT_TRUE(report.changed.empty());
  EXPECT_EQ(reg.snapshot().dump(), before.dump());
}

TEST(Adaptation, ImitateBestFullCopy) {
  auto reg = best_play_population(5, 3, 2, 2);
  Rng rng(2);
  const auto report =
      adapt_population(reg, {AdaptationKind::kImitateBest, 1.0, 0.0, false},
                       payoffs({1, 2, 9, 4, 5}), rng);
  EXPECT_EQ(report.model, AgentId(3));
  EXPECT_EQ(report.changed.size(), 4u);
  for (std::uint32_t id = 1; id <= 5; ++id) {
    EXPECT_EQ(state_of(reg, id), state_of(reg, 3));
  }
}

TEST(Adaptation, ImitateBestFullPerturbationHammingDistance) {
  double total = 0;
  int samples = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto reg = best_play_population(2, 3, 1, seed);
    Rng rng(1000 + seed);
    adapt_population(reg, {AdaptationKind::kImitateBest, 1.0, 1.0, false},
                     payoffs({5, 1}), rng);
    const auto& model = state_of(reg, 1).tables[0];
    const auto& copy = state_of(reg, 2).tables[0];
    ASSERT_EQ(copy.size(), 8u);
    for (std::size_t i = 0; i < 8; ++i) total += model[i] != copy[i] ? 1 : 0;
    ++samples;
  }
  const double mean = total / samples;
  EXPECT_GE(mean, 3.2);
  EXPECT_LE(mean, 4.8);
}

TEST(Adaptation, ImitationRequiresMatchingKind) {
  Registry reg;
  Rng rng(3);
  auto bp = std::make_unique<BestPlayStrategy>(2, 1);
  bp->begin_game(mg_context(), rng);
  reg.add(std::move(bp));
  reg.add(std::make_unique<TitForTatStrategy>());
  auto report =
      adapt_population(reg, {AdaptationKind::kImitateBest, 1.0, 0.0, false},
                       payoffs({10, 0}), rng);
  EXPECT_TRUE(report.changed.empty());
  EXPECT_EQ(reg.at(AgentId(2)).strategy->name(), "TitForTat");

  report = adapt_population(reg, {AdaptationKind::kImitateBest, 1.0, 0.0, true},
                            payoffs({10, 0}), rng);
  EXPECT_EQ(report.changed, (std::vector<AgentId>{AgentId(2)}));
  EXPECT_EQ(reg.at(AgentId(2)).strategy->name(), "BestPlay");
}

TEST(Adaptation, RandomResetRedrawsTables) {
  auto reg = best_play_population(3, 4, 2, 4);
  const auto before = state_of(reg, 1);
  Rng rng(4);
  const auto report = adapt_population(
      reg, {AdaptationKind::kRandomReset, 1.0, 0, false}, payoffs({0, 0, 0}),
      rng);
  EXPECT_EQ(report.changed.size(), 3u);
  EXPECT_NE(state_of(reg, 1).tables, before.tables);
  EXPECT_EQ(state_of(reg, 1).q, 2u);
}

TEST(Adaptation, ProbabilityZeroChangesNothing) {
  auto reg = best_play_population(3, 3, 1, 5);
  const auto before = reg.snapshot();
  Rng rng(5);
  for (const auto kind :
       {AdaptationKind::kRandomReset, AdaptationKind::kImitateBest}) {
    const auto report =
        adapt_population(reg, {kind, 0.0, 0.5, false}, payoffs({3, 2, 1}), rng);
    EXPECT_TRUE(report.changed.empty());
  }
  EXPECT_EQ(reg.snapshot().dump(), before.dump());
}

TEST(Adaptation, OneDrawPerAgent) {
  for (const auto kind :
       {AdaptationKind::kRandomReset, AdaptationKind::kImitateBest}) {
    Registry reg;
    for (int i = 0; i < 6; ++i) reg.add(std::make_unique<RandomStrategy>());
    Rng used(11);
    adapt_population(reg, {kind, 0.5, 0, false}, payoffs({1, 2, 3, 4, 5, 6}),
                     used);
    Rng expected(11);
    for (int i = 0; i < 6; ++i) expected.next();
    EXPECT_EQ(used.next(), expected.next());
  }
}

TEST(Adaptation, Deterministic) {
  auto run = [] {
    auto reg = best_play_population(6, 3, 2, 9);
    Rng rng(9);
    adapt_population(reg, {AdaptationKind::kImitateBest, 0.5, 0.3, false},
                     payoffs({1, 2, 3, 6, 5, 4}), rng);
    return reg.snapshot().dump();
  };
  EXPECT_EQ(run(), run());
}

TEST(Adaptation, UnknownAgentRejected) {
  auto reg = best_play_population(2, 3, 1, 1);
  Rng rng(1);
  std::map<AgentId, double> bad{{AgentId(1), 0}, {AgentId(7), 1}};
  EXPECT_EQ(error_code_of([&] {
              adapt_population(reg, {AdaptationKind::kNone, 0, 0, false}, bad,
                               rng);
            }),
            Errc::kParticipantMismatch);
}

TEST(Adaptation, ImitatorsPlayIdenticallyInMinorityGame) {
  auto reg = best_play_population(3, 3, 2, 12);
  Rng rng(12);
  adapt_population(reg, {AdaptationKind::kImitateBest, 1.0, 0.0, false},
                   payoffs({0, 7, 1}), rng);
  const auto spec = make_mg(3, 50);
  std::vector<std::vector<ViewerOutcome>> seen(3);
  for (std::uint32_t round = 0; round < 50; ++round) {
    std::map<AgentId, Choice> moves;
    for (std::uint32_t id = 1; id <= 3; ++id) {
      StrategyResources res;
      res.game_type = spec.type;
      res.q = 2;
      res.player_count = 3;
      res.round_index = round;
      res.prior_outcomes = seen[id - 1];
      // A shared draw stream per round so warm-up draws also coincide.
      Rng round_rng(mix_seed(77, round));
      moves[AgentId(id)] =
          reg.at(AgentId(id)).strategy->generate_choice(res, round_rng);
    }
    EXPECT_EQ(moves.at(AgentId(1)), moves.at(AgentId(2)));
    EXPECT_EQ(moves.at(AgentId(3)), moves.at(AgentId(2)));
    const auto r = resolve_round(spec, moves, round);
    for (std::uint32_t id = 1; id <= 3; ++id) {
      const auto view = revealed_view(r, spec, AgentId(id));
      reg.at(AgentId(id)).strategy->observe(view, rng);
      seen[id - 1].push_back(view);
    }
  }
}

}  // namespace
}  // namespace tourney
