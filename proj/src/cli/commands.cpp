#include "rrhsel/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <map>
#include <numbers>
#include <ostream>
#include <thread>

#include "rrhsel/analytics.hpp"
#include "rrhsel/montecarlo.hpp"
#include "rrhsel/optimizer.hpp"
#include "rrhsel/protocol.hpp"

#ifndef RRHSEL_VERSION
#define RRHSEL_VERSION "0.0.0"
#endif

namespace rrhsel::cli {

namespace {

using nlohmann::json;
namespace an = rrhsel::analytics;

json common_defaults(std::uint64_t trials)
{
  return {{"seed", 1}, {"trials", trials}, {"workers", 0}};
}

json with_common(json specific, std::uint64_t trials)
{
  json out = common_defaults(trials);
  for (const auto& item : specific.items()) out[item.key()] = item.value();
  return out;
}

json theta_range(double start, double stop, double step)
{
  return {{"start", start}, {"stop", stop}, {"step", step}};
}

/// Settings shared by every Monte-Carlo run of a command.
struct McSetup {
  std::uint64_t seed = 1;
  std::uint64_t trials = 0;
  unsigned workers = 1;

  explicit McSetup(const Settings& s, std::uint64_t min_trials)
      : seed(s.count("seed", 0)), trials(s.count("trials", min_trials))
  {
    const int w = s.integer("workers", 0);
    workers = w > 0 ? static_cast<unsigned>(w) : std::max(1u, std::thread::hardware_concurrency());
  }

  mc::ExperimentConfig experiment(double lambda_rrh, double lambda_user, double beta, std::vector<double> thetas,
                                  std::string id) const
  {
    mc::ExperimentConfig cfg;
    cfg.lambda_rrh = lambda_rrh;
    cfg.lambda_user = lambda_user;
    cfg.beta = beta;
    cfg.theta_grid = std::move(thetas);
    cfg.n_trials = trials;
    cfg.master_seed = seed;
    cfg.experiment_id = std::move(id);
    cfg.workers = workers;
    return cfg;
  }
};

std::vector<double> to_linear(const std::vector<double>& db)
{
  std::vector<double> out;
  for (double d : db) out.push_back(db_to_linear(d));
  return out;
}

double beta_of(const Settings& s)
{
  const double beta = s.number("beta");
  if (!(beta > 2.0)) s.fail("beta", "must be > 2");
  return beta;
}

/// Turns a library std::invalid_argument into a ConfigError on key.
template <typename Fn>
void check(const Settings& s, const std::string& key, Fn&& fn)
{
  try {
    fn();
  } catch (const std::invalid_argument& e) {
    s.fail(key, e.what());
  } catch (const std::domain_error& e) {
    s.fail(key, e.what());
  }
}

/// Coverage runs at the same radius share their random worlds, so a
/// configuration reproduces across commands.
std::string stream_id(const std::string& policy, double r_th)
{
  return policy == "nearest" ? "ccdf/nearest" : "ccdf/r=" + format_number(r_th);
}

std::vector<double> log_space(double lo, double hi, int n)
{
  std::vector<double> out;
  for (int k = 0; k < n; ++k) {
    const double t = n == 1 ? 0.0 : static_cast<double>(k) / (n - 1);
    out.push_back(std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))));
  }
  return out;
}

// ---------------------------------------------------------------- verify

Job prepare_verify(const Settings& s)
{
  const McSetup mcs(s, 1);
  const double lr = s.density("lambda_rrh");
  const double lu = s.density("lambda_user");
  const double beta = beta_of(s);
  const auto theta_db = s.db_grid("theta_db");
  const std::string policy = s.string("policy");
  if (policy != "threshold" && policy != "nearest") s.fail("policy", "expected \"threshold\" or \"nearest\"");
  std::vector<double> radii;
  if (policy == "threshold") {
    radii = s.numbers("r_th");
    for (double r : radii) {
      if (!(r > 0.0)) s.fail("r_th", "radii must be > 0");
    }
  } else {
    radii = {0.0};
  }
  std::vector<mc::ExperimentConfig> cfgs;
  for (double r : radii) {
    auto cfg = mcs.experiment(lr, lu, beta, to_linear(theta_db), stream_id(policy, r));
    if (policy == "threshold") {
      cfg.policy.r_th = r;
    } else {
      cfg.policy.kind = mc::Policy::nearest;
    }
    check(s, policy == "threshold" ? "r_th" : "policy", [&] { cfg.validate(); });
    cfgs.push_back(std::move(cfg));
  }

  return [=] {
    CsvTable t{{"policy", "r_th", "theta_db", "analytic_exact", "analytic_approx", "mc_estimate", "ci_half_width",
                "n_trials", "window_radius"},
               {}};
    for (std::size_t i = 0; i < cfgs.size(); ++i) {
      const auto& cfg = cfgs[i];
      const auto curve = mc::estimate_ccdf(cfg);
      for (std::size_t k = 0; k < theta_db.size(); ++k) {
        const double th = cfg.theta_grid[k];
        double exact = 0.0;
        double approx = 0.0;
        Cell r_cell;
        if (policy == "threshold") {
          const an::CoverageInputs in{radii[i], th, lr, lu, beta};
          exact = an::sir_ccdf_exact(in);
          approx = an::sir_ccdf_approx(in);
          r_cell = radii[i];
        } else {
          exact = approx = an::sir_ccdf_nearest(th, lr, lu, beta);
        }
        t.add({curve.policy, r_cell, theta_db[k], exact, approx, curve.estimates[k], curve.ci_half_width[k],
               static_cast<std::int64_t>(curve.n_trials), curve.window_radius});
      }
    }
    return t;
  };
}

// ---------------------------------------------------------------- sweep

Job prepare_sweep(const Settings& s)
{
  const std::uint64_t trials = s.count("trials", 0);
  const McSetup mcs = trials > 0 ? McSetup(s, 1) : McSetup(s, 0);
  const auto lambdas = s.densities("lambdas");
  const double lu = s.density("lambda_user");
  const double beta = beta_of(s);
  const double theta = db_to_linear(s.number("theta_db"));
  const double fmin = s.positive("r_min_factor");
  const double fmax = s.positive("r_max_factor");
  if (!(fmax > fmin)) s.fail("r_max_factor", "must exceed r_min_factor");
  const int points = s.integer("points", 2);
  for (double l : lambdas) check(s, "lambdas", [&] { an::threshold_opt_approx(theta, l, lu, beta); });

  return [=] {
    CsvTable t{{"lambda_rrh", "r_th", "exact", "approx", "is_r_star_approx", "is_r_star_numeric", "mc_estimate",
                "ci_half_width"},
               {}};
    for (std::size_t li = 0; li < lambdas.size(); ++li) {
      const double l = lambdas[li];
      const auto opt = opt::optimize_threshold_numeric(theta, l, lu, beta);
      auto radii = log_space(fmin * opt.r_star_approx, fmax * opt.r_star_approx, points);
      radii.push_back(opt.r_star_approx);
      radii.push_back(opt.r_star_numeric);
      std::sort(radii.begin(), radii.end());
      radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
      for (std::size_t k = 0; k < radii.size(); ++k) {
        const double r = radii[k];
        const an::CoverageInputs in{r, theta, l, lu, beta};
        Cell mc_est;
        Cell mc_ci;
        if (trials > 0) {
          auto cfg = mcs.experiment(l, lu, beta, {theta}, "sweep/" + std::to_string(li) + "/" + std::to_string(k));
          cfg.policy.r_th = r;
          const auto curve = mc::estimate_ccdf(cfg);
          mc_est = curve.estimates[0];
          mc_ci = curve.ci_half_width[0];
        }
        t.add({l, r, an::sir_ccdf_exact(in), an::sir_ccdf_approx(in), cell(r == opt.r_star_approx),
               cell(r == opt.r_star_numeric), mc_est, mc_ci});
      }
    }
    return t;
  };
}

// ---------------------------------------------------------------- compare-opt

Job prepare_compare_opt(const Settings& s)
{
  const std::uint64_t trials = s.count("trials", 0);
  const McSetup mcs = trials > 0 ? McSetup(s, 1) : McSetup(s, 0);
  const auto lambdas = s.densities("lambdas");
  const double lu = s.density("lambda_user");
  const double beta = beta_of(s);
  const auto theta_db = s.db_grid("theta_db");
  for (double l : lambdas) check(s, "lambdas", [&] { an::threshold_opt_approx(1.0, l, lu, beta); });

  return [=] {
    CsvTable t{{"lambda_rrh", "theta_db", "r_star_approx", "p_at_approx", "r_star_numeric", "p_at_numeric",
                "approx_over_numeric", "boundary_optimum", "mc_at_approx", "mc_ci_half_width"},
               {}};
    for (std::size_t li = 0; li < lambdas.size(); ++li) {
      for (std::size_t k = 0; k < theta_db.size(); ++k) {
        const double th = db_to_linear(theta_db[k]);
        const auto res = opt::optimize_threshold_numeric(th, lambdas[li], lu, beta);
        Cell mc_est;
        Cell mc_ci;
        if (trials > 0) {
          auto cfg = mcs.experiment(lambdas[li], lu, beta, {th},
                                    "compare-opt/" + std::to_string(li) + "/" + std::to_string(k));
          cfg.policy.r_th = res.r_star_approx;
          const auto curve = mc::estimate_ccdf(cfg);
          mc_est = curve.estimates[0];
          mc_ci = curve.ci_half_width[0];
        }
        t.add({lambdas[li], theta_db[k], res.r_star_approx, res.p_at_approx, res.r_star_numeric, res.p_at_numeric,
               res.p_at_approx / res.p_at_numeric, cell(res.boundary_optimum), mc_est, mc_ci});
      }
    }
    return t;
  };
}

// ---------------------------------------------------------------- loss

Job prepare_loss(const Settings& s)
{
  const std::uint64_t trials = s.count("trials", 0);
  const McSetup mcs = trials > 0 ? McSetup(s, 1) : McSetup(s, 0);
  const double lu = s.density("lambda_user");
  const double beta = beta_of(s);
  const auto theta_db = s.db_grid("theta_db");
  const double rmin = s.positive("ratio_min");
  const double rmax = s.positive("ratio_max");
  if (!(rmax >= rmin)) s.fail("ratio_max", "must be >= ratio_min");
  const int points = s.integer("ratio_points", 1);
  const auto ratios = log_space(rmin, rmax, points);

  return [=] {
    CsvTable t{{"density_ratio", "theta_db", "x", "loss_analytic", "f_overlay", "abs_diff", "mc_loss",
                "mc_ci_half_width"},
               {}};
    for (std::size_t k = 0; k < theta_db.size(); ++k) {
      const double th = db_to_linear(theta_db[k]);
      for (std::size_t i = 0; i < ratios.size(); ++i) {
        const double lr = ratios[i] * lu;
        const double r = an::threshold_opt_approx(th, lr, lu, beta);
        const double loss = an::relative_loss({r, th, lr, lu, beta});
        const double x = an::loss_argument(th, lr, lu, beta);
        const double f = an::asymptotic_f(x);
        Cell mc_loss;
        Cell mc_ci;
        if (trials > 0) {
          const std::string id = "loss/" + std::to_string(k) + "/" + std::to_string(i);
          auto rnd = mcs.experiment(lr, lu, beta, {th}, id + "/random");
          rnd.policy.r_th = r;
          auto near = mcs.experiment(lr, lu, beta, {th}, id + "/nearest");
          near.policy.kind = mc::Policy::nearest;
          const auto curve = mc::estimate_loss(rnd, near);
          mc_loss = cell(curve.ratio[0]);
          mc_ci = cell(curve.ci_half_width[0]);
        }
        t.add({ratios[i], theta_db[k], x, loss, f, std::abs(loss - f), mc_loss, mc_ci});
      }
    }
    return t;
  };
}

// ---------------------------------------------------------------- shadow

Job prepare_shadow(const Settings& s)
{
  const McSetup mcs(s, 1);
  const double lr = s.density("lambda_rrh");
  const double lu = s.density("lambda_user");
  const double beta = beta_of(s);
  const double theta_db = s.number("theta_db");
  const auto t_values = s.numbers("t_values");
  for (double t : t_values) {
    if (!(t > 0.0)) s.fail("t_values", "must be > 0");
  }
  const ShadowingModel model = ShadowingModel::lognormal(s.number("sigma_db"), s.number("mu_db"));
  check(s, "sigma_db", [&] { model.validate(); });

  return [=] {
    const double th = db_to_linear(theta_db);
    const auto moments = an::shadow_moments(model, beta);
    const auto pt = an::threshold_opt_shadow(th, lr, lu, beta, moments);
    CsvTable t{{"quantity", "parameter", "analytic", "mc_estimate", "std_error", "ci_half_width", "n_trials"}, {}};
    const auto n = static_cast<std::int64_t>(mcs.trials);

    auto power_cfg = [&](double p_th, const std::string& id) {
      auto cfg = mcs.experiment(lr, lu, beta, {th}, id);
      cfg.policy.kind = mc::Policy::power_random;
      cfg.policy.p_th = p_th;
      cfg.policy.shadowing = model;
      return cfg;
    };
    for (std::size_t k = 0; k < t_values.size(); ++k) {
      const auto est = mc::estimate_candidate_count(power_cfg(1.0 / t_values[k], "shadow/t/" + std::to_string(k)));
      t.add({std::string("intensity_count"), t_values[k], an::intensity_measure(t_values[k], lr, beta, moments),
             est.mean, est.std_error, est.ci_half_width, n});
    }
    const double target = lr * std::numbers::pi * pt.r_th_sh * pt.r_th_sh;
    const auto at_p = mc::estimate_candidate_count(power_cfg(pt.p_th, "shadow/p_th"));
    t.add({std::string("count_at_p_th"), pt.p_th, target, at_p.mean, at_p.std_error, at_p.ci_half_width, n});

    auto dist = mcs.experiment(lr, lu, beta, {th}, "shadow/r_th");
    dist.policy.r_th = pt.r_th_sh;
    const auto at_r = mc::estimate_candidate_count(dist);
    t.add({std::string("count_at_r_th_sh"), pt.r_th_sh, target, at_r.mean, at_r.std_error, at_r.ci_half_width, n});

    const auto cov = mc::estimate_ccdf(power_cfg(pt.p_th, "shadow/coverage"));
    t.add({std::string("coverage_power_threshold"), theta_db, Cell{}, cov.estimates[0], Cell{},
           cov.ci_half_width[0], n});
    return t;
  };
}

// ---------------------------------------------------------------- multi

Job prepare_multi(const Settings& s)
{
  const McSetup mcs(s, 1);
  const double lr = s.density("lambda_rrh");
  const double lu = s.density("lambda_user");
  const double beta = beta_of(s);
  const double design = db_to_linear(s.number("design_theta_db"));
  const auto theta_db = s.db_grid("theta_db");
  std::vector<int> branches;
  for (double l : s.numbers("L")) {
    if (!(l >= 1.0 && std::floor(l) == l && l <= 64)) s.fail("L", "entries must be integers in [1, 64]");
    branches.push_back(static_cast<int>(l));
  }
  const std::string partial_name = s.string("partial");
  PartialPolicy partial = PartialPolicy::serve_available;
  if (partial_name == "outage") partial = PartialPolicy::outage;
  else if (partial_name != "serve_available") s.fail("partial", "expected \"serve_available\" or \"outage\"");
  check(s, "design_theta_db", [&] { an::threshold_opt_approx(design, lr, lu, beta); });

  return [=] {
    CsvTable t{{"L", "r_th", "threshold_ratio", "theta_db", "mc_mrc", "mc_mrc_ci", "single_at_theta",
                "single_at_theta_ci", "single_at_theta_over_L", "single_at_theta_over_L_ci", "band_tolerance",
                "in_band", "n_trials"},
               {}};
    const double r1 = an::threshold_opt_multi(1, design, lr, lu, beta);
    const auto thetas = to_linear(theta_db);
    for (int L : branches) {
      const double r = an::threshold_opt_multi(L, design, lr, lu, beta);
      const std::string id = stream_id("threshold", r);

      auto mrc = mcs.experiment(lr, lu, beta, thetas, id);
      mrc.policy.r_th = r;
      mrc.policy.num_selected = L;
      mrc.policy.combining = mc::Combining::mrc;
      mrc.policy.partial = partial;
      const auto mrc_curve = mc::estimate_ccdf(mrc);

      std::vector<double> grid = thetas;
      for (double th : thetas) grid.push_back(th / L);
      std::sort(grid.begin(), grid.end());
      grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
      auto single = mcs.experiment(lr, lu, beta, grid, id);
      single.policy.r_th = r;
      const auto single_curve = mc::estimate_ccdf(single);
      std::map<double, std::size_t> at;
      for (std::size_t k = 0; k < grid.size(); ++k) at[grid[k]] = k;

      for (std::size_t k = 0; k < thetas.size(); ++k) {
        const std::size_t lo = at.at(thetas[k]);
        const std::size_t hi = at.at(thetas[k] / L);
        const double p = mrc_curve.estimates[k];
        const double ci = mrc_curve.ci_half_width[k];
        const double tol_lo = 2.0 * std::hypot(ci, single_curve.ci_half_width[lo]);
        const double tol_hi = 2.0 * std::hypot(ci, single_curve.ci_half_width[hi]);
        const bool inside = p >= single_curve.estimates[lo] - tol_lo && p <= single_curve.estimates[hi] + tol_hi;
        t.add({std::int64_t{L}, r, r / r1, theta_db[k], p, ci, single_curve.estimates[lo],
               single_curve.ci_half_width[lo], single_curve.estimates[hi], single_curve.ci_half_width[hi],
               std::max(tol_lo, tol_hi), cell(inside), static_cast<std::int64_t>(mrc_curve.n_trials)});
      }
    }
    return t;
  };
}

// ---------------------------------------------------------------- protocol

Job prepare_protocol(const Settings& s)
{
  proto::ComplexityConfig cfg;
  cfg.master_seed = s.count("seed", 0);
  cfg.trials = s.count("trials", 1);
  cfg.lambdas = s.densities("lambdas");
  cfg.bits = s.integer("bits", 0);
  if (cfg.bits < 2) s.fail("bits", "must be >= 2");
  cfg.switch_config.max_delay = s.positive("max_delay");
  cfg.switch_config.fiber_offset = s.number("fiber_offset");
  const std::string rule = s.string("r_rule");
  if (rule == "fixed") {
    cfg.rule.kind = proto::ThresholdRule::Kind::fixed;
    cfg.rule.r_th = s.positive("r_th");
  } else if (rule == "optimal") {
    cfg.rule.kind = proto::ThresholdRule::Kind::optimal;
    cfg.rule.lambda_user = s.density("lambda_user");
    cfg.rule.theta = db_to_linear(s.number("theta_db"));
    cfg.rule.beta = beta_of(s);
  } else {
    s.fail("r_rule", "expected \"fixed\" or \"optimal\"");
  }
  check(s, "fiber_offset", [&] { cfg.validate(); });

  return [=] {
    CsvTable t{{"lambda_rrh", "r_th", "mean_candidates", "random_comparisons", "nearest_comparisons",
                "nearest_comparisons_ci", "random_bits", "nearest_bits", "random_latency_s", "nearest_latency_s",
                "empty_fraction", "n_trials"},
               {}};
    for (const auto& row : proto::compare_complexity(cfg)) {
      t.add({row.lambda_rrh, row.r_th, row.candidates.mean, row.random_comparisons.mean,
             row.nearest_comparisons.mean, row.nearest_comparisons.ci_half_width, row.random_bits.mean,
             row.nearest_bits.mean, row.random_latency.mean, row.nearest_latency.mean, row.empty_fraction,
             static_cast<std::int64_t>(cfg.trials)});
    }
    return t;
  };
}

std::string utc_now()
{
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

const std::vector<std::string>& command_names()
{
  static const std::vector<std::string> names{"verify", "sweep", "compare-opt", "loss", "shadow", "multi", "protocol"};
  return names;
}

nlohmann::json default_config(std::string_view command)
{
  if (command == "verify") {
    return with_common({{"lambda_rrh", "1e-5/pi"},
                        {"lambda_user", "1e-6/pi"},
                        {"beta", 4.0},
                        {"policy", "threshold"},
                        {"r_th", {250.0, 500.0, 1000.0, 2000.0}},
                        {"theta_db", theta_range(-10, 20, 2)}},
                       100000);
  }
  if (command == "sweep") {
    return with_common({{"lambdas", {"1e-3/pi", "1e-4/pi", "1e-5/pi"}},
                        {"lambda_user", "1e-5/pi"},
                        {"beta", 4.0},
                        {"theta_db", 0.0},
                        {"r_min_factor", 0.05},
                        {"r_max_factor", 20.0},
                        {"points", 200}},
                       0);
  }
  if (command == "compare-opt") {
    return with_common({{"lambdas", {"1e-3/pi", "1e-4/pi", "1e-5/pi"}},
                        {"lambda_user", "1e-5/pi"},
                        {"beta", 4.0},
                        {"theta_db", theta_range(-10, 20, 1)}},
                       0);
  }
  if (command == "loss") {
    return with_common({{"lambda_user", "1e-5/pi"},
                        {"beta", 4.0},
                        {"theta_db", {0.0, 3.0, 6.0}},
                        {"ratio_min", 1.0},
                        {"ratio_max", 100.0},
                        {"ratio_points", 41}},
                       0);
  }
  if (command == "shadow") {
    return with_common({{"lambda_rrh", "1e-4/pi"},
                        {"lambda_user", "1e-5/pi"},
                        {"beta", 4.0},
                        {"sigma_db", 8.0},
                        {"mu_db", 0.0},
                        {"theta_db", 0.0},
                        {"t_values", {1e6, 1e8, 1e10}}},
                       10000);
  }
  if (command == "multi") {
    return with_common({{"lambda_rrh", "1e-5/pi"},
                        {"lambda_user", "1e-6/pi"},
                        {"beta", 4.0},
                        {"design_theta_db", 0.0},
                        {"L", {1, 2, 4}},
                        {"partial", "serve_available"},
                        {"theta_db", theta_range(-10, 20, 2)}},
                       20000);
  }
  if (command == "protocol") {
    return with_common({{"lambdas", {"1e-5/pi", "1e-4/pi", "1e-3/pi"}},
                        {"r_rule", "fixed"},
                        {"r_th", 158.843713190676},
                        {"lambda_user", "1e-5/pi"},
                        {"theta_db", 0.0},
                        {"beta", 4.0},
                        {"bits", 4},
                        {"max_delay", 1e-3},
                        {"fiber_offset", 0.0}},
                       10000);
  }
  throw ConfigError("unknown command '" + std::string(command) + "'");
}

Job prepare(const Settings& s)
{
  const std::string& c = s.command();
  if (c == "verify") return prepare_verify(s);
  if (c == "sweep") return prepare_sweep(s);
  if (c == "compare-opt") return prepare_compare_opt(s);
  if (c == "loss") return prepare_loss(s);
  if (c == "shadow") return prepare_shadow(s);
  if (c == "multi") return prepare_multi(s);
  if (c == "protocol") return prepare_protocol(s);
  throw ConfigError("unknown command '" + c + "'");
}

Settings resolve_settings(const Invocation& inv)
{
  Settings s(inv.command, default_config(inv.command));
  if (inv.config_file) s.merge_file(*inv.config_file);
  for (const auto& a : inv.assignments) s.assign(a);
  if (inv.seed) s.set("seed", *inv.seed, "--seed");
  if (inv.trials) s.set("trials", *inv.trials, "--trials");
  if (inv.workers) s.set("workers", *inv.workers, "--workers");
  return s;
}

std::filesystem::path default_out_dir()
{
  if (const char* env = std::getenv("RRHSEL_OUT_DIR"); env && *env) return env;
  return "results";
}

int execute(const Invocation& inv, std::ostream& log)
{
  Job job;
  Settings settings("", json::object());
  try {
    settings = resolve_settings(inv);
    job = prepare(settings);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  const auto start = std::chrono::steady_clock::now();
  RunManifest manifest;
  manifest.command = inv.command;
  manifest.version = RRHSEL_VERSION;
  manifest.master_seed = settings.resolved().at("seed").get<std::uint64_t>();
  manifest.config = settings.resolved();
  manifest.started_utc = utc_now();
  std::string body;
  try {
    body = to_csv(job());
  } catch (const std::exception& e) {
    log << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  }
  manifest.duration_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  try {
    const auto path = write_outputs(inv.out_dir ? *inv.out_dir : default_out_dir(), manifest, body);
    log << "wrote " << path.string() << "\n";
  } catch (const std::exception& e) {
    log << "output error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace rrhsel::cli
