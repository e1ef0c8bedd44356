#include "tourney/best_play.hpp"

#include <algorithm>
#include <string>

#include "tourney/codec.hpp"
#include "tourney/error.hpp"

namespace tourney {

std::uint64_t best_play_table_length(std::uint32_t q, std::uint32_t memory) {
  const auto length = codec::table_length(q, memory);
  if (length > kMaxBestPlayTableLength) {
    throw Error(Errc::kTableTooLarge,
                "BestPlay table " + std::to_string(q) + "^" +
                    std::to_string(memory) + " = " + std::to_string(length) +
                    " exceeds the limit of " +
                    std::to_string(kMaxBestPlayTableLength) + " entries");
  }
  return length;
}

namespace {

std::vector<std::vector<Choice>> draw_tables(std::uint32_t memory,
                                             std::uint32_t q,
                                             std::size_t pool, Rng& rng) {
  const auto length = best_play_table_length(q, memory);
  std::vector<std::vector<Choice>> tables(pool);
  for (auto& table : tables) {
    table.resize(length);
    for (auto& entry : table) entry = static_cast<Choice>(rng.below(q));
  }
  return tables;
}

}  // namespace

BestPlayState best_play_init(std::uint32_t memory, std::uint32_t q,
                             std::uint32_t pool, Rng& rng) {
  if (pool < 1) {
    throw Error(Errc::kInvalidArgument, "BestPlay pool size must be >= 1");
  }
  BestPlayState state;
  state.memory = memory;
  state.q = q;
  state.tables = draw_tables(memory, q, pool, rng);
  state.virtual_scores.assign(pool, 0);
  return state;
}

std::size_t best_play_active_table(const BestPlayState& state) {
  const auto best = std::max_element(state.virtual_scores.begin(),
                                     state.virtual_scores.end());
  return static_cast<std::size_t>(best - state.virtual_scores.begin());
}

Choice best_play_choice(const BestPlayState& state, Rng& rng) {
  if (!state.history_full()) {
    return static_cast<Choice>(rng.below(state.q));
  }
  const auto index = codec::encode_history(state.history, state.q);
  return state.tables[best_play_active_table(state)][index];
}

void best_play_observe(BestPlayState& state, Choice outcome) {
  if (outcome >= state.q) {
    throw Error(Errc::kDigitOutOfRange,
                "outcome symbol " + std::to_string(outcome) +
                    " is not below q=" + std::to_string(state.q));
  }
  if (state.history_full()) {
    const auto index = codec::encode_history(state.history, state.q);
    for (std::size_t t = 0; t < state.tables.size(); ++t) {
      if (state.tables[t][index] == outcome) ++state.virtual_scores[t];
    }
    state.history.erase(state.history.begin());
  }
  state.history.push_back(outcome);
}

bool best_play_resize(BestPlayState& state, std::uint32_t new_q, Rng& rng) {
  if (new_q == state.q) return false;
  auto tables = draw_tables(state.memory, new_q, state.tables.size(), rng);
  state.tables = std::move(tables);
  state.virtual_scores.assign(state.tables.size(), 0);
  state.history.clear();
  state.q = new_q;
  return true;
}

void best_play_perturb(BestPlayState& state, double epsilon, Rng& rng) {
  if (epsilon <= 0) return;
  for (auto& table : state.tables) {
    for (auto& entry : table) {
      if (rng.bernoulli(epsilon)) entry = static_cast<Choice>(rng.below(state.q));
    }
  }
}

}  // namespace tourney
