#include "commands.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "tourney/config.hpp"
#include "tourney/engine.hpp"
#include "tourney/stats.hpp"
#include "tourney/strategies.hpp"

namespace tourney::cli {

namespace {

void report(const std::filesystem::path& file, const ConfigError& e,
            std::ostream& err) {
  for (const auto& d : e.diagnostics()) {
    err << file.string() << ": " << d.str() << '\n';
  }
}

}  // namespace

int cmd_run(const RunArgs& args, std::ostream& out, std::ostream& err) {
  TournamentPlan plan;
  try {
    plan = load_tournament_spec(args.config);
  } catch (const ConfigError& e) {
    report(args.config, e, err);
    return kExitInvalid;
  }

  RunOptions options;
  if (args.seed) {
    plan.seed = *args.seed;
    options.seed_source = "cli";
  }
  if (args.out_dir) plan.output.dir = args.out_dir->string();

  try {
    auto registry = build_registry(plan);
    if (const auto violations = validate_plan_against_registry(plan, registry);
        !violations.empty()) {
      report(args.config, ConfigError(violations), err);
      return kExitInvalid;
    }
    const auto artifacts = run_tournament(plan, registry, options);
    const auto paths = finalize_dataset(artifacts.stats, artifacts.trace,
                                        plan.output.dir, plan.output.summary);
    out << "tournament " << artifacts.tournament_id << " (seed " << plan.seed
        << "): " << artifacts.stats.records().size() << " records\n";
    out << "records: " << paths.records.string() << '\n';
    out << "trace:   " << paths.trace.string() << '\n';
    if (paths.summary) {
      out << "summary: " << paths.summary->string() << "\n\n";
      print_summary(out, summarize(artifacts.stats.records()));
    }
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

int cmd_validate(const std::filesystem::path& config, std::ostream& out,
                 std::ostream& err) {
  try {
    const auto plan = load_tournament_spec(config);
    const auto registry = build_registry(plan);
    if (const auto violations = validate_plan_against_registry(plan, registry);
        !violations.empty()) {
      report(config, ConfigError(violations), err);
      return kExitInvalid;
    }
  } catch (const ConfigError& e) {
    report(config, e, err);
    return kExitInvalid;
  } catch (const Error& e) {
    err << config.string() << ": " << e.what() << '\n';
    return kExitInvalid;
  }
  out << "OK\n";
  return kExitOk;
}

int cmd_list(std::ostream& out) {
  out << "Games\n";
  out << "  IPD   Iterated Prisoner's Dilemma: 2 players, 2 choices, "
         "params T R P S (default 5 3 1 0)\n";
  out << "  MG    Minority Game: odd N >= 3, 2 choices, minority side wins 1\n";
  out << "  LPGG  Linear Public Goods Game: N >= 2, choices 0..endowment, "
         "params endowment mpcr\n";
  out << "\nStrategies\n";
  for (const auto& d : strategy_catalog()) {
    out << "  " << d.name << "  " << d.summary << '\n';
    for (const auto& p : d.parameters) {
      out << "      " << p.name << " (" << p.type << ", " << p.bounds;
      if (!p.default_value.empty()) out << ", default " << p.default_value;
      out << ")\n";
    }
    out << "      applies to: " << d.applicability << '\n';
  }
  return kExitOk;
}

int cmd_summary(const std::filesystem::path& records, std::ostream& out,
                std::ostream& err) {
  std::ifstream in(records, std::ios::binary);
  if (!in) {
    err << records.string() << ": cannot read records\n";
    return kExitInvalid;
  }
  try {
    const auto rows = read_records_csv(in);
    print_summary(out, summarize(rows));
  } catch (const Error& e) {
    err << records.string() << ": " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitOk;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-game agent tournament simulator"};
  app.require_subcommand(1);

  RunArgs run_args;
  std::uint64_t seed = 0;
  std::string out_dir;
  auto* run = app.add_subcommand("run", "run a tournament and write its dataset");
  run->add_option("--config", run_args.config, "tournament description (JSON)")
      ->required();
  auto* seed_opt =
      run->add_option("--seed", seed, "override the configured seed");
  auto* out_opt =
      run->add_option("--out", out_dir, "override the output directory");

  std::filesystem::path validate_config;
  auto* validate =
      app.add_subcommand("validate", "check a tournament description");
  validate->add_option("--config", validate_config, "tournament description")
      ->required();

  auto* list = app.add_subcommand("list", "list games and strategies");

  std::filesystem::path records;
  auto* summary =
      app.add_subcommand("summary", "summarize an existing records.csv");
  summary->add_option("--in", records, "records.csv to read")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInvalid;
  }

  if (*run) {
    if (*seed_opt) run_args.seed = seed;
    if (*out_opt) run_args.out_dir = out_dir;
    return cmd_run(run_args, out, err);
  }
  if (*validate) return cmd_validate(validate_config, out, err);
  if (*list) return cmd_list(out);
  if (*summary) return cmd_summary(records, out, err);
  return kExitInvalid;
}

}  // namespace tourney::cli
