#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "tourney/engine.hpp"
#include "tourney/error.hpp"
#include "tourney/registry.hpp"

namespace tourney {

inline constexpr int kSpecVersion = 1;

// A problem with a tournament description. `location` is either
// "line L, column C" for syntax errors or a JSON pointer such as
// "/games/1/params/mpcr".
struct Diagnostic {
  std::string location;
  std::string message;

  std::string str() const { return location + ": " + message; }
  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<Diagnostic> diagnostics);

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

// Parses and fully validates a tournament description. Every schema and
// game-rule violation found is reported together in one ConfigError.
TournamentPlan parse_tournament_spec(std::string_view text);

// Reads the file first; an unreadable file is a single-diagnostic
// ConfigError located at the path.
TournamentPlan load_tournament_spec(const std::filesystem::path& path);

// Canonical document for a plan with every default spelled out.
// parse_tournament_spec(serialize_tournament_spec(p)) == p.
nlohmann::ordered_json to_json(const TournamentPlan& plan);
std::string serialize_tournament_spec(const TournamentPlan& plan);

// Whether each game's player selection can be met by `registry`. Returned,
// never thrown.
std::vector<Diagnostic> validate_plan_against_registry(
    const TournamentPlan& plan, const Registry& registry);

}  // namespace tourney
