#include "rrhsel/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace rrhsel::cli {

namespace {

double parse_plain(const std::string& text)
{
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + text + "'");
  }
  if (used != text.size()) throw ConfigError("not a number: '" + text + "'");
  return v;
}

std::size_t line_of(std::string_view text, std::size_t offset)
{
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

}  // namespace

double parse_density(const nlohmann::json& value)
{
  double v = 0.0;
  if (value.is_number()) {
    v = value.get<double>();
  } else if (value.is_string()) {
    std::string s;
    for (char c : value.get<std::string>()) {
      if (!std::isspace(static_cast<unsigned char>(c))) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    double scale = 1.0;
    if (const auto slash = s.find('/'); slash != std::string::npos) {
      const std::string den = s.substr(slash + 1);
      if (den != "pi" && den != "\xcf\x80") throw ConfigError("density denominator must be pi: '" + s + "'");
      scale = 1.0 / std::numbers::pi;
      s.resize(slash);
    }
    if (s.rfind("10^", 0) == 0) {
      v = std::pow(10.0, parse_plain(s.substr(3)));
    } else {
      v = parse_plain(s);
    }
    v *= scale;
  } else {
    throw ConfigError("density must be a number or a string like \"1e-5/pi\"");
  }
  if (!(std::isfinite(v) && v > 0.0)) throw ConfigError("density must be finite and > 0");
  return v;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

Settings::Settings(std::string command, nlohmann::json defaults)
    : command_(std::move(command)), values_(std::move(defaults))
{
  for (const auto& item : values_.items()) origin_[item.key()] = "default";
}

void Settings::merge_file(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  merge_text(buf.str(), path.string());
}

void Settings::merge_text(std::string_view text, const std::string& origin)
{
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t line = line_of(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ConfigError(origin + ":" + std::to_string(line) + ": JSON syntax error: " + e.what());
  }
  if (!doc.is_object()) throw ConfigError(origin + ":1: config must be a JSON object");
  for (const auto& item : doc.items()) {
    const std::string quoted = "\"" + item.key() + "\"";
    const std::size_t pos = text.find(quoted);
    const std::size_t line = pos == std::string_view::npos ? 1 : line_of(text, pos);
    set(item.key(), item.value(), origin + ":" + std::to_string(line));
  }
}

void Settings::assign(std::string_view assignment)
{
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0)
    throw ConfigError("--set expects key=value, got '" + std::string(assignment) + "'");
  const std::string key(assignment.substr(0, eq));
  const std::string raw(assignment.substr(eq + 1));
  nlohmann::json value;
  try {
    value = nlohmann::json::parse(raw);
  } catch (const nlohmann::json::parse_error&) {
    value = raw;
  }
  set(key, std::move(value), "--set " + key);
}

void Settings::set(const std::string& key, nlohmann::json value, const std::string& origin)
{
  if (!values_.contains(key)) {
    std::string known;
    for (const auto& item : values_.items()) known += (known.empty() ? "" : ", ") + item.key();
    throw ConfigError(origin + ": unknown key '" + key + "' for command " + command_ + " (known: " + known + ")");
  }
  values_[key] = std::move(value);
  origin_[key] = origin;
}

void Settings::fail(const std::string& key, const std::string& message) const
{
  const auto it = origin_.find(key);
  const std::string where = it == origin_.end() ? "config" : it->second;
  throw ConfigError(where + ": key '" + key + "': " + message);
}

const nlohmann::json& Settings::at(const std::string& key) const
{
  if (!values_.contains(key)) throw ConfigError("internal: no setting '" + key + "'");
  return values_.at(key);
}

double Settings::number(const std::string& key) const
{
  const auto& v = at(key);
  if (!v.is_number()) fail(key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(key, "must be finite");
  return x;
}

double Settings::positive(const std::string& key) const
{
  const double x = number(key);
  if (!(x > 0.0)) fail(key, "must be > 0");
  return x;
}

double Settings::density(const std::string& key) const
{
  try {
    return parse_density(at(key));
  } catch (const ConfigError& e) {
    fail(key, e.what());
  }
}

std::vector<double> Settings::numbers(const std::string& key) const
{
  const auto& v = at(key);
  if (!v.is_array() || v.empty()) fail(key, "expected a non-empty array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number() || !std::isfinite(e.get<double>())) fail(key, "array entries must be finite numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::vector<double> Settings::densities(const std::string& key) const
{
  const auto& v = at(key);
  if (!v.is_array() || v.empty()) fail(key, "expected a non-empty array of densities");
  std::vector<double> out;
  for (const auto& e : v) {
    try {
      out.push_back(parse_density(e));
    } catch (const ConfigError& err) {
      fail(key, err.what());
    }
  }
  return out;
}

std::uint64_t Settings::count(const std::string& key, std::uint64_t min_value) const
{
  const auto& v = at(key);
  double x = 0.0;
  if (v.is_number_integer()) {
    x = v.get<double>();
  } else if (v.is_number_float() && std::floor(v.get<double>()) == v.get<double>()) {
    x = v.get<double>();
  } else {
    fail(key, "expected an integer");
  }
  if (x < static_cast<double>(min_value)) fail(key, "must be >= " + std::to_string(min_value));
  if (x > 1e15) fail(key, "too large");
  return static_cast<std::uint64_t>(x);
}

int Settings::integer(const std::string& key, int min_value) const
{
  const std::uint64_t v = count(key, static_cast<std::uint64_t>(std::max(0, min_value)));
  if (v > 1000000) fail(key, "too large");
  return static_cast<int>(v);
}

std::string Settings::string(const std::string& key) const
{
  const auto& v = at(key);
  if (!v.is_string()) fail(key, "expected a string");
  return v.get<std::string>();
}

bool Settings::boolean(const std::string& key) const
{
  const auto& v = at(key);
  if (!v.is_boolean()) fail(key, "expected true or false");
  return v.get<bool>();
}

std::vector<double> Settings::db_grid(const std::string& key) const
{
  const auto& v = at(key);
  std::vector<double> out;
  if (v.is_array()) {
    out = numbers(key);
  } else if (v.is_object() && v.contains("start") && v.contains("stop") && v.contains("step")) {
    const auto& a = v.at("start");
    const auto& b = v.at("stop");
    const auto& s = v.at("step");
    if (!a.is_number() || !b.is_number() || !s.is_number()) fail(key, "start, stop and step must be numbers");
    const double start = a.get<double>();
    const double stop = b.get<double>();
    const double step = s.get<double>();
    if (!(step > 0.0) || !(stop >= start)) fail(key, "need step > 0 and stop >= start");
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (n > 100000) fail(key, "grid too large");
    for (std::size_t k = 0; k < n; ++k) out.push_back(start + step * static_cast<double>(k));
  } else {
    fail(key, "expected an array of dB values or {\"start\", \"stop\", \"step\"}");
  }
  for (std::size_t k = 1; k < out.size(); ++k) {
    if (!(out[k] > out[k - 1])) fail(key, "dB grid must be strictly increasing");
  }
  return out;
}

}  // namespace rrhsel::cli
