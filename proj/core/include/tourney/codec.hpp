#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tourney/types.hpp"

namespace tourney::codec {

// Largest table the codec will describe: 2^63 - 1 entries.
inline constexpr std::uint64_t kMaxTableLength = (std::uint64_t{1} << 63) - 1;

// The last m outcome symbols, oldest first, each a base-q digit.
struct HistoryWindow {
  std::vector<Choice> digits;
  std::uint32_t base = 2;

  friend bool operator==(const HistoryWindow&, const HistoryWindow&) = default;
};

// q^m with checked arithmetic. Throws kTableTooLarge past kMaxTableLength and
// kInvalidArgument for q < 2 or m < 1.
std::uint64_t table_length(std::uint32_t q, std::uint32_t m);

// Positional base-q value of the window: the oldest symbol is the most
// significant digit, so [0,1,0] in base 2 is 2 and [2,2,2] in base 3 is 26.
std::uint64_t encode_history(std::span<const Choice> digits, std::uint32_t q);
inline std::uint64_t encode_history(const HistoryWindow& window) {
  return encode_history(window.digits, window.base);
}

// Inverse of encode_history. Throws kIndexOutOfRange when index >= q^m.
HistoryWindow decode_index(std::uint64_t index, std::uint32_t q,
                           std::uint32_t m);

}  // namespace tourney::codec
