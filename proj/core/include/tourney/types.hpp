#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tourney {

// One of a game's q options, always in [0, q).
using Choice = std::uint32_t;

// Agents are numbered from 1 in configuration order and printed as "a<n>".
// Ordering is numeric, so a2 < a10.
class AgentId {
 public:
  constexpr AgentId() = default;
  constexpr explicit AgentId(std::uint32_t value) : value_(value) {}

  constexpr std::uint32_t value() const noexcept { return value_; }
  std::string str() const { return "a" + std::to_string(value_); }

  static std::optional<AgentId> parse(std::string_view text);

  friend constexpr auto operator<=>(AgentId, AgentId) = default;

 private:
  std::uint32_t value_ = 0;
};

enum class GameType { kIpd, kMg, kLpgg };

std::string_view to_string(GameType type);
std::optional<GameType> parse_game_type(std::string_view text);

}  // namespace tourney
