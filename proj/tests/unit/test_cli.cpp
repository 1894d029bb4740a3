#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <sys/wait.h>

#include "rrhsel/cli/commands.hpp"

using namespace rrhsel::cli;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name)
{
  const auto dir = fs::temp_directory_path() / ("rrhsel_cli_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& body)
{
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(body);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) row.push_back(field);
    if (!line.empty() && line.back() == ',') row.emplace_back();
    rows.push_back(row);
  }
  return rows;
}

std::string run_body(const std::string& command, std::vector<std::string> sets)
{
  Settings s(command, default_config(command));
  for (const auto& a : sets) s.assign(a);
  return to_csv(prepare(s)());
}

}  // namespace

TEST_CASE("density shorthand")
{
  const double pi = std::numbers::pi;
  CHECK(parse_density("1e-5/pi") == doctest::Approx(1e-5 / pi).epsilon(1e-15));
  CHECK(parse_density("10^-5/pi") == doctest::Approx(1e-5 / pi).epsilon(1e-15));
  CHECK(parse_density(" 10^-3 / PI ") == doctest::Approx(1e-3 / pi).epsilon(1e-15));
  CHECK(parse_density("3e-6") == 3e-6);
  CHECK(parse_density(2.5e-4) == 2.5e-4);
  CHECK_THROWS_AS(parse_density("1e-5/e"), ConfigError);
  CHECK_THROWS_AS(parse_density("abc"), ConfigError);
  CHECK_THROWS_AS(parse_density(-1.0), ConfigError);
  CHECK_THROWS_AS(parse_density(true), ConfigError);
}

TEST_CASE("dB grids")
{
  Settings s("verify", default_config("verify"));
  const auto g = s.db_grid("theta_db");
  REQUIRE(g.size() == 16);
  CHECK(g.front() == -10.0);
  CHECK(g.back() == 20.0);
  s.assign("theta_db=[3, 1]");
  CHECK_THROWS_AS(s.db_grid("theta_db"), ConfigError);
  CHECK(db_to_linear(10.0) == doctest::Approx(10.0));
}

TEST_CASE("config diagnostics name the line")
{
  Settings s("verify", default_config("verify"));
  try {
    s.merge_text("{\n  \"trials\": 5,\n  \"beta\": \"four\"\n}\n", "cfg.json");
    (void)s.number("beta");
    FAIL("expected an error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("cfg.json:3") != std::string::npos);
  }
  try {
    s.merge_text("{\n\n  \"trails\": 5\n}", "cfg.json");
    FAIL("expected an error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("cfg.json:3") != std::string::npos);
    CHECK(std::string(e.what()).find("unknown key") != std::string::npos);
  }
  try {
    s.merge_text("{\n  \"trials\": 5,\n  \"beta\": 4,,\n}", "cfg.json");
    FAIL("expected an error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("cfg.json:3") != std::string::npos);
  }
}

TEST_CASE("zero trials is a config error and writes nothing")
{
  const auto dir = fresh_dir("zero");
  Invocation inv;
  inv.command = "verify";
  inv.trials = 0;
  inv.out_dir = dir;
  std::ostringstream log;
  CHECK(execute(inv, log) == kExitConfig);
  CHECK_FALSE(fs::exists(dir / "verify.csv"));
  CHECK(log.str().find("trials") != std::string::npos);
}

TEST_CASE("verify writes a CSV and a matching manifest")
{
  const auto dir = fresh_dir("verify");
  Invocation inv;
  inv.command = "verify";
  inv.trials = 300;
  inv.seed = 5;
  inv.out_dir = dir;
  inv.assignments = {"r_th=[250, 500]", "theta_db=[0, 10]"};
  std::ostringstream log;
  REQUIRE(execute(inv, log) == kExitOk);
  const std::string body = slurp(dir / "verify.csv");
  const auto rows = parse_csv(body);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0][0] == "policy");
  CHECK(rows[1][1] == "250");
  const auto manifest = nlohmann::json::parse(slurp(dir / "verify.manifest.json"));
  CHECK(manifest["outputs"][0]["sha256"] == sha256_hex(body));
  CHECK(manifest["master_seed"] == 5);
  CHECK(manifest["config"]["trials"] == 300);
  CHECK(manifest["command"] == "verify");
  CHECK(manifest.contains("duration_s"));
}

TEST_CASE("CSV bodies are reproducible across runs and worker counts")
{
  const std::vector<std::string> sets{"trials=400", "r_th=[500]", "theta_db=[-4, 4]"};
  auto one = sets;
  one.push_back("workers=1");
  auto three = sets;
  three.push_back("workers=3");
  const auto a = run_body("verify", one);
  CHECK(a == run_body("verify", one));
  CHECK(a == run_body("verify", three));
  CHECK(a != run_body("verify", {"trials=400", "r_th=[500]", "theta_db=[-4, 4]", "seed=2"}));
}

TEST_CASE("loss table")
{
  const auto rows = parse_csv(run_body("loss", {}));
  REQUIRE(rows.size() == 1 + 3 * 41);
  std::vector<double> at0;
  std::vector<double> at6;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i][5]) <= 1e-10);
    CHECK(rows[i][6].empty());
    if (rows[i][1] == "0") at0.push_back(std::stod(rows[i][3]));
    if (rows[i][1] == "6" && std::stod(rows[i][0]) < 3.0) at6.push_back(std::stod(rows[i][3]));
  }
  // At 0 dB the loss dips just above ratio 1 before rising; strict growth
  // holds from the minimum on.
  bool has_decrease = false;
  for (std::size_t k = 1; k < at6.size(); ++k) has_decrease |= at6[k] < at6[k - 1];
  CHECK(has_decrease);
  CHECK(at0.back() > at0.front());
}

TEST_CASE("sweep table marks both optima")
{
  const auto rows = parse_csv(run_body("sweep", {"lambdas=[\"1e-4/pi\"]", "points=60"}));
  double best_exact = 0.0;
  double exact_at_approx = -1.0;
  double approx_at_approx = -1.0;
  double best_approx = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double ex = std::stod(rows[i][2]);
    const double ap = std::stod(rows[i][3]);
    best_exact = std::max(best_exact, ex);
    best_approx = std::max(best_approx, ap);
    if (rows[i][4] == "1") {
      exact_at_approx = ex;
      approx_at_approx = ap;
    }
  }
  CHECK(best_exact >= exact_at_approx);
  CHECK(approx_at_approx == best_approx);
  CHECK(exact_at_approx == doctest::Approx(0.759391667).epsilon(1e-8));
}

TEST_CASE("compare-opt table")
{
  const auto rows = parse_csv(run_body("compare-opt", {}));
  REQUIRE(rows.size() == 1 + 3 * 31);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i][3]) <= std::stod(rows[i][5]));
    CHECK(std::stod(rows[i][6]) >= 0.97);
  }
}

TEST_CASE("multi thresholds scale with the eighth root of L")
{
  const auto rows = parse_csv(run_body("multi", {"trials=200", "theta_db=[0]"}));
  REQUIRE(rows.size() == 4);
  CHECK(std::stod(rows[1][2]) == doctest::Approx(1.0));
  CHECK(std::stod(rows[2][2]) == doctest::Approx(std::pow(2.0, 0.125)).epsilon(1e-8));
  CHECK(std::stod(rows[3][2]) == doctest::Approx(std::pow(4.0, 0.125)).epsilon(1e-8));
}

TEST_CASE("multi with L = 1 reproduces verify at the same radius and seed")
{
  const auto multi = parse_csv(run_body("multi", {"trials=500", "L=[1]", "theta_db=[0, 6]"}));
  REQUIRE(multi.size() == 3);
  const std::string r = multi[1][1];
  const auto verify = parse_csv(run_body("verify", {"trials=500", "r_th=[" + r + "]", "theta_db=[0, 6]"}));
  REQUIRE(verify.size() == 3);
  for (std::size_t i = 1; i < 3; ++i) {
    CHECK(multi[i][4] == multi[i][6]);  // one-branch MRC equals single branch
    CHECK(multi[i][4] == verify[i][5]);
  }
}

TEST_CASE("the binary maps errors to exit codes")
{
  const auto dir = fresh_dir("bin");
  const std::string tool = RRHSEL_TOOL;
  const std::string out = " --out " + dir.string() + " >/dev/null 2>&1";
  auto code = [](int raw) { return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1; };
  CHECK(code(std::system((tool + " verify --trials 0" + out).c_str())) == 2);
  CHECK(code(std::system((tool + " verify --set nope=1" + out).c_str())) == 2);
  CHECK(code(std::system((tool + " nosuchcommand" + out).c_str())) == 2);
  CHECK(code(std::system((tool + " loss" + out).c_str())) == 0);
  CHECK(fs::exists(dir / "loss.csv"));
  CHECK(fs::exists(dir / "loss.manifest.json"));
}

TEST_CASE("output directory falls back to the environment")
{
  setenv("RRHSEL_OUT_DIR", "/tmp/somewhere", 1);
  CHECK(default_out_dir() == fs::path("/tmp/somewhere"));
  unsetenv("RRHSEL_OUT_DIR");
  CHECK(default_out_dir() == fs::path("results"));
}
