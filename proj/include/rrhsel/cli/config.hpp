#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace rrhsel::cli {

/// Bad configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Density from a number or a string such as "1e-5/pi", "10^-5/pi", "3e-6".
double parse_density(const nlohmann::json& value);

double db_to_linear(double db);

/**
 * Flat key/value configuration of one command.
 *
 * Starts from the command defaults; a JSON file and then command-line
 * assignments override it. Unknown keys are rejected. Errors name the
 * origin of the offending value (file:line, flag, or default).
 */
class Settings {
 public:
  Settings(std::string command, nlohmann::json defaults);

  void merge_file(const std::filesystem::path& path);
  void merge_text(std::string_view text, const std::string& origin);
  /// "key=value", value parsed as JSON and otherwise taken as a string.
  void assign(std::string_view assignment);
  void set(const std::string& key, nlohmann::json value, const std::string& origin);

  const std::string& command() const noexcept { return command_; }
  const nlohmann::json& resolved() const noexcept { return values_; }

  double number(const std::string& key) const;
  double positive(const std::string& key) const;
  double density(const std::string& key) const;
  std::vector<double> numbers(const std::string& key) const;
  std::vector<double> densities(const std::string& key) const;
  std::uint64_t count(const std::string& key, std::uint64_t min_value) const;
  int integer(const std::string& key, int min_value) const;
  std::string string(const std::string& key) const;
  bool boolean(const std::string& key) const;
  /// List of dB values, or {"start", "stop", "step"} expanded inclusively.
  std::vector<double> db_grid(const std::string& key) const;

  [[noreturn]] void fail(const std::string& key, const std::string& message) const;

 private:
  const nlohmann::json& at(const std::string& key) const;

  std::string command_;
  nlohmann::json values_;
  std::map<std::string, std::string> origin_;
};

}  // namespace rrhsel::cli
