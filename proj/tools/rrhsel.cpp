#include <iostream>

#include <CLI11.hpp>

#include "rrhsel/cli/commands.hpp"

namespace {

const char* describe(const std::string& name)
{
  if (name == "verify") return "Monte-Carlo coverage against the closed form, per threshold radius";
  if (name == "sweep") return "Coverage versus threshold radius, with both optima marked";
  if (name == "compare-opt") return "Coverage at the closed-form and numeric optima over theta";
  if (name == "loss") return "Loss of random selection against nearest selection versus density ratio";
  if (name == "shadow") return "Candidate counts and coverage under a received-power threshold";
  if (name == "multi") return "MRC coverage over L selected RRHs and its single-RRH band";
  if (name == "protocol") return "Switch arbitration cost, random versus nearest selection";
  return "";
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Low-complexity RRH selection: analytics, Monte-Carlo and protocol cost"};
  app.require_subcommand(1);

  rrhsel::cli::Invocation inv;
  std::string config_file;
  std::string out_dir;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  unsigned workers = 0;
  bool show_defaults = false;

  for (const auto& name : rrhsel::cli::command_names()) {
    auto* sub = app.add_subcommand(name, describe(name));
    sub->add_option("-c,--config", config_file, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--set", inv.assignments, "Override one config key, key=value (repeatable)");
    sub->add_option("--seed", seed, "Master seed");
    sub->add_option("--trials", trials, "Monte-Carlo trials (0 disables optional MC columns)");
    sub->add_option("--workers", workers, "Worker threads (0 = all cores)");
    sub->add_option("--out", out_dir, "Output directory (default $RRHSEL_OUT_DIR or ./results)");
    sub->add_flag("--print-defaults", show_defaults, "Print the default config and exit");
    sub->callback([&inv, name] { inv.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : rrhsel::cli::kExitConfig;
  }

  auto* sub = app.get_subcommand(inv.command);
  if (show_defaults) {
    std::cout << rrhsel::cli::default_config(inv.command).dump(2) << "\n";
    return 0;
  }
  if (!config_file.empty()) inv.config_file = config_file;
  if (!out_dir.empty()) inv.out_dir = out_dir;
  if (sub->count("--seed")) inv.seed = seed;
  if (sub->count("--trials")) inv.trials = trials;
  if (sub->count("--workers")) inv.workers = workers;
  return rrhsel::cli::execute(inv, std::cerr);
}
