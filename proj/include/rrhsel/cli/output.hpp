#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace rrhsel::cli {

/// Empty cells serialize as nothing (e.g. an undefined ratio).
using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

Cell cell(std::optional<double> v);
Cell cell(bool v);

/// 9 significant digits, shortest of fixed/scientific as printf %.9g.
std::string format_number(double v);
std::string to_csv(const CsvTable& table);
std::string sha256_hex(std::string_view data);

struct RunManifest {
  std::string command;
  std::string version;
  std::uint64_t master_seed = 0;
  nlohmann::json config;
  double duration_s = 0.0;
  std::string started_utc;

  nlohmann::json to_json(const std::string& csv_name, const std::string& csv_body) const;
};

/// Writes <dir>/<command>.csv and <dir>/<command>.manifest.json; returns
/// the CSV path.
std::filesystem::path write_outputs(const std::filesystem::path& dir, const RunManifest& manifest,
                                    const std::string& csv_body);

}  // namespace rrhsel::cli
