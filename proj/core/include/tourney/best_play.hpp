#pragma once

#include <cstdint>
#include <vector>

#include "tourney/rng.hpp"
#include "tourney/types.hpp"

namespace tourney {

// A single BestPlay table may not exceed this many entries.
inline constexpr std::uint64_t kMaxBestPlayTableLength = std::uint64_t{1} << 20;

// Memory of the last `memory` outcome symbols plus a pool of lookup tables,
// each indexed by the base-q code of that memory.
struct BestPlayState {
  std::uint32_t memory = 1;
  std::uint32_t q = 2;
  std::vector<std::vector<Choice>> tables;
  // One per table: rounds in which the table predicted the realized symbol.
  std::vector<std::int64_t> virtual_scores;
  // Oldest first, at most `memory` long.
  std::vector<Choice> history;

  std::size_t pool_size() const { return tables.size(); }
  bool history_full() const { return history.size() == memory; }

  friend bool operator==(const BestPlayState&, const BestPlayState&) = default;
};

// Table length q^m, throwing kTableTooLarge past kMaxBestPlayTableLength.
std::uint64_t best_play_table_length(std::uint32_t q, std::uint32_t memory);

// `pool` tables of length q^memory with uniform entries, zero scores and an
// empty history.
BestPlayState best_play_init(std::uint32_t memory, std::uint32_t q,
                             std::uint32_t pool, Rng& rng);

// Highest virtual score, ties to the lowest index.
std::size_t best_play_active_table(const BestPlayState& state);

// Uniform random while the history is short, otherwise the active table's
// entry at the encoded history.
Choice best_play_choice(const BestPlayState& state, Rng& rng);

// Scores every table that predicted `outcome` at the pre-round history (only
// once the history is full), then pushes `outcome` into the history.
void best_play_observe(BestPlayState& state, Choice outcome);

// Redraws tables for a new choice count, resetting scores and history.
// Returns false and leaves the state untouched when new_q equals q.
bool best_play_resize(BestPlayState& state, std::uint32_t new_q, Rng& rng);

// Each table entry is redrawn uniformly with probability epsilon.
void best_play_perturb(BestPlayState& state, double epsilon, Rng& rng);

}  // namespace tourney
