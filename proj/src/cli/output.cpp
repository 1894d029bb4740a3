#include "rrhsel/cli/output.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace rrhsel::cli {

namespace {

std::string escape_field(const std::string& s)
{
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_file(const std::filesystem::path& path, const std::string& body)
{
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << body;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

void CsvTable::add(std::vector<Cell> row)
{
  if (row.size() != header.size()) throw std::logic_error("CSV row width does not match header");
  rows.push_back(std::move(row));
}

Cell cell(std::optional<double> v) { return v ? Cell{*v} : Cell{}; }
Cell cell(bool v) { return Cell{std::int64_t{v ? 1 : 0}}; }

std::string format_number(double v)
{
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string to_csv(const CsvTable& table)
{
  std::string out;
  for (std::size_t k = 0; k < table.header.size(); ++k) out += (k ? "," : "") + escape_field(table.header[k]);
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) out += format_number(v);
            else if constexpr (std::is_same_v<T, std::int64_t>) out += std::to_string(v);
            else if constexpr (std::is_same_v<T, std::string>) out += escape_field(v);
          },
          row[k]);
    }
    out += '\n';
  }
  return out;
}

std::string sha256_hex(std::string_view data)
{
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xf];
  }
  return out;
}

nlohmann::json RunManifest::to_json(const std::string& csv_name, const std::string& csv_body) const
{
  nlohmann::json j;
  j["command"] = command;
  j["version"] = version;
  j["master_seed"] = master_seed;
  j["config"] = config;
  j["started_utc"] = started_utc;
  j["duration_s"] = duration_s;
  j["outputs"] = nlohmann::json::array(
      {{{"file", csv_name}, {"sha256", sha256_hex(csv_body)}, {"bytes", csv_body.size()}}});
  return j;
}

std::filesystem::path write_outputs(const std::filesystem::path& dir, const RunManifest& manifest,
                                    const std::string& csv_body)
{
  std::filesystem::create_directories(dir);
  const std::string name = manifest.command + ".csv";
  const auto csv_path = dir / name;
  write_file(csv_path, csv_body);
  write_file(dir / (manifest.command + ".manifest.json"), manifest.to_json(name, csv_body).dump(2) + "\n");
  return csv_path;
}

}  // namespace rrhsel::cli
