#include "tourney/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "tourney/best_play.hpp"

namespace tourney {

namespace {

using json = nlohmann::json;

std::string join_messages(const std::vector<Diagnostic>& diagnostics) {
  std::string out;
  for (const auto& d : diagnostics) {
    if (!out.empty()) out += '\n';
    out += d.str();
  }
  return out;
}

std::string type_name(const json& j) { return j.type_name(); }

class Parser {
 public:
  std::vector<Diagnostic> diagnostics;

  void error(const std::string& path, std::string message) {
    diagnostics.push_back({path.empty() ? "/" : path, std::move(message)});
  }

  bool expect_object(const json& j, const std::string& path) {
    if (j.is_object()) return true;
    error(path, "expected an object, got " + type_name(j));
    return false;
  }

  void allow_keys(const json& obj, const std::string& path,
                  std::initializer_list<std::string_view> allowed) {
    for (const auto& [key, value] : obj.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        error(path + "/" + key, "unknown key '" + key + "'");
      }
    }
  }

  const json* field(const json& obj, const std::string& path,
                    std::string_view key, bool required) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) {
        error(path + "/" + std::string(key),
              "missing required key '" + std::string(key) + "'");
      }
      return nullptr;
    }
    return &*it;
  }

  std::optional<std::uint64_t> unsigned_value(
      const json& j, const std::string& path, std::uint64_t min = 0,
      std::uint64_t max = std::numeric_limits<std::uint64_t>::max()) {
    std::uint64_t v = 0;
    if (j.is_number_unsigned()) {
      v = j.get<std::uint64_t>();
    } else if (j.is_number_integer()) {
      error(path, "expected a non-negative integer, got " +
                      std::to_string(j.get<std::int64_t>()));
      return std::nullopt;
    } else {
      error(path, "expected an integer, got " + type_name(j));
      return std::nullopt;
    }
    if (v < min || v > max) {
      error(path, "value " + std::to_string(v) + " outside [" +
                      std::to_string(min) + ", " + std::to_string(max) + "]");
      return std::nullopt;
    }
    return v;
  }

  std::optional<double> real_value(const json& j, const std::string& path) {
    if (!j.is_number()) {
      error(path, "expected a number, got " + type_name(j));
      return std::nullopt;
    }
    const auto v = j.get<double>();
    if (!std::isfinite(v)) {
      error(path, "expected a finite number");
      return std::nullopt;
    }
    return v;
  }

  std::optional<double> probability(const json& j, const std::string& path) {
    auto v = real_value(j, path);
    if (v && (*v < 0 || *v > 1)) {
      error(path, "probability must lie in [0, 1], got " + j.dump());
      return std::nullopt;
    }
    return v;
  }

  std::optional<std::string> string_value(const json& j,
                                          const std::string& path) {
    if (!j.is_string()) {
      error(path, "expected a string, got " + type_name(j));
      return std::nullopt;
    }
    return j.get<std::string>();
  }

  std::optional<bool> bool_value(const json& j, const std::string& path) {
    if (!j.is_boolean()) {
      error(path, "expected a boolean, got " + type_name(j));
      return std::nullopt;
    }
    return j.get<bool>();
  }

  template <typename Enum>
  std::optional<Enum> enum_value(
      const json& j, const std::string& path,
      std::initializer_list<std::pair<std::string_view, Enum>> options) {
    const auto text = string_value(j, path);
    if (!text) return std::nullopt;
    std::string names;
    for (const auto& [name, value] : options) {
      if (name == *text) return value;
      names += names.empty() ? "" : ", ";
      names += name;
    }
    error(path, "unknown value '" + *text + "' (expected one of: " + names +
                    ")");
    return std::nullopt;
  }

  std::optional<StrategyConfig> strategy(const json& obj,
                                         const std::string& path,
                                         bool allow_count);
  std::optional<GamePlan> game(const json& obj, const std::string& path,
                               std::uint32_t population, bool population_known);
  void adaptation(const json& obj, const std::string& path,
                  AdaptationPolicy& out);
  void output(const json& obj, const std::string& path, OutputOptions& out);
};

std::optional<StrategyConfig> Parser::strategy(const json& obj,
                                               const std::string& path,
                                               bool allow_count) {
  if (!expect_object(obj, path)) return std::nullopt;
  if (allow_count) {
    allow_keys(obj, path, {"count", "strategy", "params"});
  } else {
    allow_keys(obj, path, {"strategy", "params"});
  }
  const auto* name_field = field(obj, path, "strategy", true);
  if (name_field == nullptr) return std::nullopt;
  const auto name = string_value(*name_field, path + "/strategy");
  if (!name) return std::nullopt;
  if (find_strategy(*name) == nullptr) {
    std::string known;
    for (const auto& d : strategy_catalog()) {
      known += known.empty() ? "" : ", ";
      known += d.name;
    }
    error(path + "/strategy",
          "unknown strategy '" + *name + "' (registered: " + known + ")");
    return std::nullopt;
  }

  StrategyConfig config;
  config.name = *name;
  static const json kEmpty = json::object();
  const auto* params = field(obj, path, "params", false);
  const std::string ppath = path + "/params";
  if (params != nullptr && !expect_object(*params, ppath)) return std::nullopt;
  const json& p = params != nullptr ? *params : kEmpty;
  const auto before = diagnostics.size();

  if (config.name == "Random" || config.name == "TitForTat") {
    allow_keys(p, ppath, {});
  } else if (config.name == "FixedChoice") {
    allow_keys(p, ppath, {"choice"});
    if (const auto* c = field(p, ppath, "choice", true)) {
      if (auto v = unsigned_value(*c, ppath + "/choice", 0,
                                  std::numeric_limits<Choice>::max())) {
        config.choice = static_cast<Choice>(*v);
      }
    }
  } else if (config.name == "BestPlay") {
    allow_keys(p, ppath, {"memory", "pool"});
    if (const auto* m = field(p, ppath, "memory", false)) {
      if (auto v = unsigned_value(*m, ppath + "/memory", 1, 64)) {
        config.memory = static_cast<std::uint32_t>(*v);
      }
    }
    if (const auto* s = field(p, ppath, "pool", false)) {
      if (auto v = unsigned_value(*s, ppath + "/pool", 1, 1024)) {
        config.pool = static_cast<std::uint32_t>(*v);
      }
    }
  } else if (config.name == "StrategyBag") {
    allow_keys(p, ppath, {"mode", "members", "mapping"});
    if (const auto* m = field(p, ppath, "mode", false)) {
      if (auto v = enum_value<BagMode>(
              *m, ppath + "/mode",
              {{"fixed", BagMode::kFixed}, {"random", BagMode::kRandom}})) {
        config.bag_mode = *v;
      }
    }
    if (const auto* members = field(p, ppath, "members", true)) {
      if (!members->is_array() || members->empty()) {
        error(ppath + "/members", "expected a non-empty array");
      } else {
        for (std::size_t i = 0; i < members->size(); ++i) {
          const auto mpath = ppath + "/members/" + std::to_string(i);
          const auto& raw = (*members)[i];
          if (raw.is_object() && raw.contains("strategy") &&
              raw["strategy"] == "StrategyBag") {
            error(mpath + "/strategy", "strategy bags cannot be nested");
            continue;
          }
          if (auto member = strategy(raw, mpath, false)) {
            config.members.push_back(std::move(*member));
          }
        }
      }
    }
    if (const auto* mapping = field(p, ppath, "mapping", false)) {
      if (expect_object(*mapping, ppath + "/mapping")) {
        for (const auto& [key, value] : mapping->items()) {
          const auto kpath = ppath + "/mapping/" + key;
          const auto type = parse_game_type(key);
          if (!type) {
            error(kpath, "unknown game type '" + key + "'");
            continue;
          }
          if (auto v = unsigned_value(value, kpath)) {
            if (*v >= config.members.size()) {
              error(kpath, "member index " + std::to_string(*v) +
                               " is past the last member");
            } else {
              config.mapping[*type] = static_cast<std::size_t>(*v);
            }
          }
        }
      }
    }
    if (config.bag_mode == BagMode::kRandom && !config.mapping.empty()) {
      error(ppath + "/mapping", "mapping is only used in fixed mode");
    }
  }
  if (diagnostics.size() != before) return std::nullopt;
  return config;
}

std::optional<GamePlan> Parser::game(const json& obj, const std::string& path,
                                     std::uint32_t population,
                                     bool population_known) {
  if (!expect_object(obj, path)) return std::nullopt;
  allow_keys(obj, path, {"type", "rounds", "players", "params"});
  const auto before = diagnostics.size();

  std::optional<GameType> type;
  if (const auto* t = field(obj, path, "type", true)) {
    type = enum_value<GameType>(*t, path + "/type",
                                {{"IPD", GameType::kIpd},
                                 {"MG", GameType::kMg},
                                 {"LPGG", GameType::kLpgg}});
  }
  std::uint32_t rounds = 0;
  if (const auto* r = field(obj, path, "rounds", true)) {
    if (auto v = unsigned_value(*r, path + "/rounds", 1, 100'000'000)) {
      rounds = static_cast<std::uint32_t>(*v);
    }
  }

  PlayerSelection players;
  // The population is unknown when an agent group failed to parse.
  std::uint32_t player_count = population;
  bool count_known = population_known;
  if (const auto* sel = field(obj, path, "players", false)) {
    const auto spath = path + "/players";
    if (expect_object(*sel, spath)) {
      allow_keys(*sel, spath, {"mode", "ids", "count"});
      if (const auto* m = field(*sel, spath, "mode", true)) {
        if (auto mode = enum_value<SelectionMode>(
                *m, spath + "/mode",
                {{"all", SelectionMode::kAll},
                 {"fixed-list", SelectionMode::kFixedList},
                 {"random-of-count", SelectionMode::kRandom}})) {
          players.mode = *mode;
        }
      }
      const auto* ids = field(*sel, spath, "ids", false);
      const auto* count = field(*sel, spath, "count", false);
      if (players.mode != SelectionMode::kFixedList && ids != nullptr) {
        error(spath + "/ids", "'ids' is only used with mode fixed-list");
      }
      if (players.mode != SelectionMode::kRandom && count != nullptr) {
        error(spath + "/count", "'count' is only used with mode random-of-count");
      }
      if (players.mode == SelectionMode::kFixedList) {
        if (ids == nullptr) {
          error(spath + "/ids", "missing required key 'ids'");
        } else if (!ids->is_array() || ids->empty()) {
          error(spath + "/ids", "expected a non-empty array of agent ids");
        } else {
          for (std::size_t i = 0; i < ids->size(); ++i) {
            const auto ipath = spath + "/ids/" + std::to_string(i);
            const auto text = string_value((*ids)[i], ipath);
            if (!text) continue;
            const auto id = AgentId::parse(*text);
            if (!id) {
              error(ipath, "malformed agent id '" + *text +
                               "' (expected a1, a2, ...)");
              continue;
            }
            players.ids.push_back(*id);
          }
        }
        player_count = static_cast<std::uint32_t>(players.ids.size());
        count_known = true;
      } else if (players.mode == SelectionMode::kRandom) {
        if (count == nullptr) {
          error(spath + "/count", "missing required key 'count'");
        } else if (auto v = unsigned_value(*count, spath + "/count", 1,
                                           1'000'000)) {
          players.count = static_cast<std::uint32_t>(*v);
        }
        player_count = players.count;
        count_known = true;
      }
    }
  }

  if (!type) return std::nullopt;
  GameSpec spec;
  spec.type = *type;
  spec.axes = default_axes(*type, player_count);
  spec.rounds = rounds;
  switch (*type) {
    case GameType::kIpd: spec.params = IpdParams{}; break;
    case GameType::kMg: spec.params = MgParams{}; break;
    case GameType::kLpgg: spec.params = LpggParams{}; break;
  }

  static const json kEmpty = json::object();
  const auto ppath = path + "/params";
  const auto* params = field(obj, path, "params", false);
  if (params != nullptr && !expect_object(*params, ppath)) return std::nullopt;
  const json& p = params != nullptr ? *params : kEmpty;

  switch (*type) {
    case GameType::kIpd:
      allow_keys(p, ppath, {"T", "R", "P", "S", "identity", "moves",
                            "communication", "topology"});
      break;
    case GameType::kMg:
      allow_keys(p, ppath,
                 {"identity", "moves", "communication", "topology"});
      break;
    case GameType::kLpgg:
      allow_keys(p, ppath, {"endowment", "mpcr", "identity", "moves",
                            "communication", "topology"});
      break;
  }
  if (const auto* v = field(p, ppath, "identity", false)) {
    if (auto e = enum_value<Identity>(*v, ppath + "/identity",
                                      {{"known", Identity::kKnown},
                                       {"unknown", Identity::kUnknown},
                                       {"irrelevant", Identity::kIrrelevant}})) {
      spec.axes.identity = *e;
    }
  }
  if (const auto* v = field(p, ppath, "moves", false)) {
    if (auto e = enum_value<MoveMode>(
            *v, ppath + "/moves",
            {{"simultaneous", MoveMode::kSimultaneous},
             {"sequential", MoveMode::kSequential}})) {
      spec.axes.moves = *e;
    }
  }
  if (const auto* v = field(p, ppath, "communication", false)) {
    if (auto e = enum_value<Communication>(
            *v, ppath + "/communication",
            {{"not-possible", Communication::kNotPossible},
             {"possible", Communication::kPossible}})) {
      spec.axes.communication = *e;
    }
  }
  if (const auto* v = field(p, ppath, "topology", false)) {
    if (auto e = enum_value<Topology>(*v, ppath + "/topology",
                                      {{"non-spatial", Topology::kNonSpatial},
                                       {"spatial", Topology::kSpatial}})) {
      spec.axes.topology = *e;
    }
  }
  if (*type == GameType::kIpd) {
    auto& m = std::get<IpdParams>(spec.params);
    for (auto [key, slot] : {std::pair{"T", &m.t}, std::pair{"R", &m.r},
                             std::pair{"P", &m.p}, std::pair{"S", &m.s}}) {
      if (const auto* v = field(p, ppath, key, false)) {
        if (auto x = real_value(*v, ppath + "/" + key)) *slot = *x;
      }
    }
  } else if (*type == GameType::kLpgg) {
    auto& m = std::get<LpggParams>(spec.params);
    if (const auto* v = field(p, ppath, "endowment", false)) {
      if (auto x = unsigned_value(*v, ppath + "/endowment", 1, 1'000'000)) {
        m.endowment = static_cast<std::uint32_t>(*x);
      }
    }
    if (const auto* v = field(p, ppath, "mpcr", true)) {
      if (auto x = real_value(*v, ppath + "/mpcr")) m.mpcr = *x;
    }
  }

  if (diagnostics.size() != before) return std::nullopt;
  for (auto& v : validate_game_spec(spec)) {
    if (!count_known && v.field == "players") continue;
    error(path + "/" + v.field, v.message);
  }
  if (diagnostics.size() != before) return std::nullopt;
  return GamePlan{spec, players};
}

void Parser::adaptation(const json& obj, const std::string& path,
                        AdaptationPolicy& out) {
  if (!expect_object(obj, path)) return;
  allow_keys(obj, path, {"kind", "p", "epsilon", "copyKind"});
  if (const auto* k = field(obj, path, "kind", true)) {
    if (auto kind = enum_value<AdaptationKind>(
            *k, path + "/kind",
            {{"none", AdaptationKind::kNone},
             {"random-reset", AdaptationKind::kRandomReset},
             {"imitate-best", AdaptationKind::kImitateBest}})) {
      out.kind = *kind;
    }
  }
  const bool needs_p = out.kind != AdaptationKind::kNone;
  if (const auto* p = field(obj, path, "p", needs_p)) {
    if (auto v = probability(*p, path + "/p")) out.p = *v;
  }
  if (const auto* e = field(obj, path, "epsilon", false)) {
    if (out.kind != AdaptationKind::kImitateBest) {
      error(path + "/epsilon", "epsilon only applies to imitate-best");
    } else if (auto v = probability(*e, path + "/epsilon")) {
      out.epsilon = *v;
    }
  }
  if (const auto* c = field(obj, path, "copyKind", false)) {
    if (out.kind != AdaptationKind::kImitateBest) {
      error(path + "/copyKind", "copyKind only applies to imitate-best");
    } else if (auto v = bool_value(*c, path + "/copyKind")) {
      out.copy_kind = *v;
    }
  }
}

void Parser::output(const json& obj, const std::string& path,
                    OutputOptions& out) {
  if (!expect_object(obj, path)) return;
  allow_keys(obj, path, {"dir", "summary"});
  if (const auto* d = field(obj, path, "dir", false)) {
    if (auto v = string_value(*d, path + "/dir")) {
      if (v->empty()) {
        error(path + "/dir", "output directory must not be empty");
      } else {
        out.dir = *v;
      }
    }
  }
  if (const auto* s = field(obj, path, "summary", false)) {
    if (auto v = bool_value(*s, path + "/summary")) out.summary = *v;
  }
}

// Every BestPlay table, FixedChoice value and bag mapping must suit every
// game in the plan.
void check_strategy_against_games(Parser& parser, const StrategyConfig& s,
                                  const std::string& path,
                                  const std::vector<GamePlan>& games) {
  for (std::size_t g = 0; g < games.size(); ++g) {
    const auto& spec = games[g].spec;
    const auto q = num_choices(spec);
    const auto where = " in game " + std::to_string(g) + " (" +
                       std::string(to_string(spec.type)) + ", q=" +
                       std::to_string(q) + ")";
    if (s.name == "BestPlay") {
      try {
        best_play_table_length(q, s.memory);
      } catch (const Error& e) {
        parser.error(path + "/params/memory", e.what() + where);
      }
    } else if (s.name == "FixedChoice" && s.choice >= q) {
      parser.error(path + "/params/choice",
                   "choice " + std::to_string(s.choice) + " is not valid" +
                       where);
    } else if (s.name == "StrategyBag" && s.bag_mode == BagMode::kFixed &&
               !s.mapping.contains(spec.type)) {
      parser.error(path + "/params/mapping",
                   "no member mapped to " + std::string(to_string(spec.type)));
    }
  }
  for (std::size_t i = 0; i < s.members.size(); ++i) {
    check_strategy_against_games(
        parser, s.members[i],
        path + "/params/members/" + std::to_string(i), games);
  }
}

std::vector<Diagnostic> check_players(const TournamentPlan& plan,
                                      const std::set<AgentId>& ids) {
  std::vector<Diagnostic> out;
  for (std::size_t g = 0; g < plan.games.size(); ++g) {
    const auto& game = plan.games[g];
    const auto path = "/games/" + std::to_string(g) + "/players";
    const auto needed = game.spec.axes.player_count;
    const auto type = std::string(to_string(game.spec.type));
    switch (game.players.mode) {
      case SelectionMode::kAll:
        if (ids.size() != needed) {
          out.push_back({path, type + " needs " + std::to_string(needed) +
                                   " players but the population has " +
                                   std::to_string(ids.size())});
        }
        break;
      case SelectionMode::kFixedList: {
        std::set<AgentId> seen;
        for (std::size_t i = 0; i < game.players.ids.size(); ++i) {
          const auto id = game.players.ids[i];
          const auto ipath = path + "/ids/" + std::to_string(i);
          if (!ids.contains(id)) {
            out.push_back({ipath, "unknown agent id " + id.str()});
          }
          if (!seen.insert(id).second) {
            out.push_back({ipath, "agent " + id.str() + " listed twice"});
          }
        }
        break;
      }
      case SelectionMode::kRandom:
        if (game.players.count > ids.size()) {
          out.push_back({path + "/count",
                         type + " needs " + std::to_string(needed) +
                             " players but the population has " +
                             std::to_string(ids.size())});
        }
        break;
    }
  }
  return out;
}

std::string line_column(std::string_view text, std::size_t byte) {
  // nlohmann reports the 1-based count of bytes read; the error is at the
  // last byte read.
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

ConfigError::ConfigError(std::vector<Diagnostic> diagnostics)
    : Error(Errc::kConfig, join_messages(diagnostics)),
      diagnostics_(std::move(diagnostics)) {}

TournamentPlan parse_tournament_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::string message = e.what();
    // Drop nlohmann's "[json.exception.parse_error.101] parse error at line
    // 1, column 2: " prefix; the location is reported separately.
    if (const auto colon = message.find(": "); colon != std::string::npos) {
      message = message.substr(colon + 2);
    }
    throw ConfigError({{line_column(text, e.byte), "syntax error: " + message}});
  }

  Parser parser;
  TournamentPlan plan;
  if (!parser.expect_object(doc, "")) throw ConfigError(parser.diagnostics);
  parser.allow_keys(doc, "", {"specVersion", "seed", "order", "agents",
                              "games", "adaptation", "output"});

  if (const auto* v = parser.field(doc, "", "specVersion", true)) {
    if (auto version = parser.unsigned_value(*v, "/specVersion");
        version && *version != kSpecVersion) {
      parser.error("/specVersion", "unsupported specVersion " +
                                       std::to_string(*version) +
                                       " (expected " +
                                       std::to_string(kSpecVersion) + ")");
    }
  }
  if (const auto* v = parser.field(doc, "", "seed", true)) {
    if (auto seed = parser.unsigned_value(*v, "/seed")) plan.seed = *seed;
  }
  if (const auto* v = parser.field(doc, "", "order", false)) {
    if (auto order = parser.enum_value<GameOrder>(
            *v, "/order",
            {{"ordered-known", GameOrder::kOrderedKnown},
             {"ordered-unknown", GameOrder::kOrderedUnknown},
             {"random", GameOrder::kRandom}})) {
      plan.order = *order;
    }
  }

  const auto before_agents = parser.diagnostics.size();
  if (const auto* agents = parser.field(doc, "", "agents", true)) {
    if (!agents->is_array() || agents->empty()) {
      parser.error("/agents", "expected a non-empty array");
    } else {
      for (std::size_t i = 0; i < agents->size(); ++i) {
        const auto path = "/agents/" + std::to_string(i);
        const auto& entry = (*agents)[i];
        AgentGroup group;
        bool ok = true;
        if (entry.is_object()) {
          if (const auto* c = parser.field(entry, path, "count", true)) {
            if (auto v = parser.unsigned_value(*c, path + "/count", 1,
                                               1'000'000)) {
              group.count = static_cast<std::uint32_t>(*v);
            } else {
              ok = false;
            }
          } else {
            ok = false;
          }
        }
        if (auto s = parser.strategy(entry, path, true); s && ok) {
          group.strategy = std::move(*s);
          plan.agents.push_back(std::move(group));
        }
      }
    }
  }
  const auto population = plan.population();
  const bool population_known = parser.diagnostics.size() == before_agents;

  if (const auto* games = parser.field(doc, "", "games", true)) {
    if (!games->is_array() || games->empty()) {
      parser.error("/games", "expected a non-empty array");
    } else {
      for (std::size_t i = 0; i < games->size(); ++i) {
        if (auto g = parser.game((*games)[i], "/games/" + std::to_string(i),
                                 population, population_known)) {
          plan.games.push_back(std::move(*g));
        }
      }
    }
  }

  if (const auto* v = parser.field(doc, "", "adaptation", false)) {
    parser.adaptation(*v, "/adaptation", plan.adaptation);
  }
  if (const auto* v = parser.field(doc, "", "output", false)) {
    parser.output(*v, "/output", plan.output);
  }

  if (parser.diagnostics.empty()) {
    for (std::size_t i = 0; i < plan.agents.size(); ++i) {
      check_strategy_against_games(parser, plan.agents[i].strategy,
                                   "/agents/" + std::to_string(i), plan.games);
    }
    std::set<AgentId> ids;
    for (std::uint32_t i = 1; i <= population; ++i) ids.insert(AgentId(i));
    for (auto& d : check_players(plan, ids)) {
      parser.diagnostics.push_back(std::move(d));
    }
  }
  if (!parser.diagnostics.empty()) throw ConfigError(parser.diagnostics);
  return plan;
}

TournamentPlan load_tournament_spec(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError({{path.string(), "cannot read tournament description"}});
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_tournament_spec(text.str());
}

namespace {

nlohmann::ordered_json strategy_json(const StrategyConfig& s) {
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  if (s.name == "FixedChoice") {
    params["choice"] = s.choice;
  } else if (s.name == "BestPlay") {
    params["memory"] = s.memory;
    params["pool"] = s.pool;
  } else if (s.name == "StrategyBag") {
    params["mode"] = std::string(to_string(s.bag_mode));
    params["members"] = nlohmann::ordered_json::array();
    for (const auto& m : s.members) params["members"].push_back(strategy_json(m));
    if (s.bag_mode == BagMode::kFixed) {
      params["mapping"] = nlohmann::ordered_json::object();
      for (const auto& [type, index] : s.mapping) {
        params["mapping"][std::string(to_string(type))] = index;
      }
    }
  }
  return {{"strategy", s.name}, {"params", std::move(params)}};
}

}  // namespace

nlohmann::ordered_json to_json(const TournamentPlan& plan) {
  nlohmann::ordered_json doc;
  doc["specVersion"] = kSpecVersion;
  doc["seed"] = plan.seed;
  doc["order"] = std::string(to_string(plan.order));
  doc["agents"] = nlohmann::ordered_json::array();
  for (const auto& g : plan.agents) {
    auto entry = strategy_json(g.strategy);
    nlohmann::ordered_json group;
    group["count"] = g.count;
    group["strategy"] = entry["strategy"];
    group["params"] = entry["params"];
    doc["agents"].push_back(std::move(group));
  }
  doc["games"] = nlohmann::ordered_json::array();
  for (const auto& g : plan.games) {
    nlohmann::ordered_json game;
    game["type"] = std::string(to_string(g.spec.type));
    game["rounds"] = g.spec.rounds;
    nlohmann::ordered_json players;
    players["mode"] = g.players.mode == SelectionMode::kRandom
                          ? "random-of-count"
                          : std::string(to_string(g.players.mode));
    if (g.players.mode == SelectionMode::kFixedList) {
      players["ids"] = nlohmann::ordered_json::array();
      for (auto id : g.players.ids) players["ids"].push_back(id.str());
    } else if (g.players.mode == SelectionMode::kRandom) {
      players["count"] = g.players.count;
    }
    game["players"] = std::move(players);
    nlohmann::ordered_json params;
    if (const auto* m = std::get_if<IpdParams>(&g.spec.params)) {
      params["T"] = m->t;
      params["R"] = m->r;
      params["P"] = m->p;
      params["S"] = m->s;
    } else if (const auto* m = std::get_if<LpggParams>(&g.spec.params)) {
      params["endowment"] = m->endowment;
      params["mpcr"] = m->mpcr;
    }
    params["identity"] = std::string(to_string(g.spec.axes.identity));
    params["moves"] = std::string(to_string(g.spec.axes.moves));
    params["communication"] =
        std::string(to_string(g.spec.axes.communication));
    params["topology"] = std::string(to_string(g.spec.axes.topology));
    game["params"] = std::move(params);
    doc["games"].push_back(std::move(game));
  }
  nlohmann::ordered_json adaptation;
  adaptation["kind"] = std::string(to_string(plan.adaptation.kind));
  adaptation["p"] = plan.adaptation.p;
  if (plan.adaptation.kind == AdaptationKind::kImitateBest) {
    adaptation["epsilon"] = plan.adaptation.epsilon;
    adaptation["copyKind"] = plan.adaptation.copy_kind;
  }
  doc["adaptation"] = std::move(adaptation);
  doc["output"] = {{"dir", plan.output.dir}, {"summary", plan.output.summary}};
  return doc;
}

std::string serialize_tournament_spec(const TournamentPlan& plan) {
  return to_json(plan).dump(2) + "\n";
}

std::vector<Diagnostic> validate_plan_against_registry(
    const TournamentPlan& plan, const Registry& registry) {
  const auto ids = registry.ids();
  return check_players(plan, std::set<AgentId>(ids.begin(), ids.end()));
}

}  // namespace tourney
