#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>

namespace tourney::cli {

// Exit statuses shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitRuntime = 2;

struct RunArgs {
  std::filesystem::path config;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> out_dir;
};

int cmd_run(const RunArgs& args, std::ostream& out, std::ostream& err);
int cmd_validate(const std::filesystem::path& config, std::ostream& out,
                 std::ostream& err);
int cmd_list(std::ostream& out);
int cmd_summary(const std::filesystem::path& records, std::ostream& out,
                std::ostream& err);

// Parses argv and dispatches to a subcommand.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace tourney::cli
