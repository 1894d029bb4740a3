#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rrhsel/cli/config.hpp"
#include "rrhsel/cli/output.hpp"

namespace rrhsel::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

const std::vector<std::string>& command_names();

/// Every key a command accepts, with its default value.
nlohmann::json default_config(std::string_view command);

using Job = std::function<CsvTable()>;

/// Reads and validates every setting; throws ConfigError. The returned job
/// does the computation and depends only on the settings.
Job prepare(const Settings& settings);

struct Invocation {
  std::string command;
  std::optional<std::filesystem::path> config_file;
  std::vector<std::string> assignments;  ///< key=value overrides
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::optional<unsigned> workers;
  std::optional<std::filesystem::path> out_dir;
};

/// Settings after defaults, file, overrides and flags, in that order.
Settings resolve_settings(const Invocation& inv);

/// $RRHSEL_OUT_DIR, else ./results.
std::filesystem::path default_out_dir();

/// Runs one command end to end and returns the process exit code.
int execute(const Invocation& inv, std::ostream& log);

}  // namespace rrhsel::cli
