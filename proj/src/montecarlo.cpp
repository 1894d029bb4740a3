#include "rrhsel/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "rrhsel/analytics.hpp"

namespace rrhsel::mc {

namespace {

// P(no RRH within the nearest-policy disc) = 1e-9.
const double kNearestEmptyLog = std::log(1e9);
// Expected number of power-threshold candidates allowed outside the RRH disc.
constexpr double kMissedCandidates = 1e-4;
constexpr std::uint64_t kChunk = 512;
// Coverage bias allowed from interferers outside the window.
constexpr double kTruncationBias = 1e-3;

double power_rrh_radius(const ExperimentConfig& cfg)
{
  const double t = 1.0 / cfg.policy.p_th;
  double rho = std::pow(t, 1.0 / cfg.beta);
  while (analytics::missed_power_candidates(t, rho, cfg.lambda_rrh, cfg.beta, cfg.policy.shadowing) >
         kMissedCandidates) {
    rho *= 1.25;
  }
  return rho;
}

double relevant_radius(const ExperimentConfig& cfg)
{
  switch (cfg.policy.kind) {
    case Policy::threshold_random: return cfg.policy.r_th;
    case Policy::power_random: return power_rrh_radius(cfg);
    case Policy::nearest: return std::sqrt(kNearestEmptyLog / (std::numbers::pi * cfg.lambda_rrh));
  }
  return 0.0;
}

/// Per-worker scratch buffers.
struct Workspace {
  NetworkRealization net;
  std::vector<double> shadow;
  std::vector<double> gains;
  std::vector<Fading> desired;
  std::vector<Fading> interferer;
};

TrialOutcome run_one(const ExperimentConfig& cfg, const SystemParams& params, const ResolvedGeometry& geo,
                     std::uint64_t trial, Workspace& ws)
{
  const PolicyConfig& pol = cfg.policy;
  const RngStream rng(cfg.master_seed, cfg.experiment_id, trial);
  sample_network(params, rng, geo.rrh_radius, ws.net);
  const auto& net = ws.net;
  const bool shadowed = pol.kind == Policy::power_random && pol.shadowing.kind != ShadowingModel::Kind::none;

  TrialOutcome out;
  SelectedSet sel;
  if (pol.kind == Policy::nearest) {
    out.candidates = static_cast<std::uint32_t>(net.rrh_points.size());
    if (auto idx = select_nearest(net)) {
      sel.indices = {*idx};
    } else {
      sel.outage = OutageKind::empty_candidates;
    }
  } else {
    CandidateSet cands;
    if (pol.kind == Policy::threshold_random) {
      cands = phase1_distance(net, pol.r_th);
    } else {
      ws.shadow.resize(net.rrh_points.size());
      for (std::size_t i = 0; i < ws.shadow.size(); ++i)
        ws.shadow[i] = draw_shadowing(pol.shadowing, rng, Substream::shadowing_desired, {i, 0});
      cands = phase1_power(net, ws.shadow, cfg.beta, pol.p_th);
    }
    out.candidates = static_cast<std::uint32_t>(cands.size());
    auto engine = rng.engine(Substream::selection);
    sel = phase2_random(cands, pol.num_selected, engine, pol.partial);
  }

  if (sel.is_outage()) {
    out.outage = sel.outage;
    return out;
  }
  out.selected_distance = net.rrh_points[sel.indices.front()].norm();

  const std::size_t users = net.user_points.size();
  auto shadow_of = [&](std::size_t rrh, std::size_t user) {
    if (!shadowed) return 1.0;
    if (user == 0) return ws.shadow[rrh];
    return draw_shadowing(pol.shadowing, rng, Substream::shadowing_interferer, {rrh, user});
  };

  if (pol.combining == Combining::single) {
    const std::size_t s = sel.indices.front();
    const double desired = draw_fading_power(rng, {s, 0}) * shadow_of(s, 0);
    ws.gains.resize(users);
    for (std::size_t i = 0; i < users; ++i)
      ws.gains[i] = draw_fading_power(rng, {s, i + 1}) * shadow_of(s, i + 1);
    out.sir = sir_single(net, s, cfg.beta, desired, ws.gains);
  } else {
    const std::size_t branches = sel.indices.size();
    ws.desired.resize(branches);
    ws.interferer.resize(branches * users);
    for (std::size_t l = 0; l < branches; ++l) {
      const std::size_t s = sel.indices[l];
      ws.desired[l] = draw_fading_polar(rng, {s, 0});
      ws.desired[l].power *= shadow_of(s, 0);
      for (std::size_t i = 0; i < users; ++i) {
        Fading f = draw_fading_polar(rng, {s, i + 1});
        f.power *= shadow_of(s, i + 1);
        ws.interferer[l * users + i] = f;
      }
    }
    out.sir = sir_mrc(net, sel.indices, cfg.beta, ws.desired, ws.interferer);
  }
  return out;
}

template <typename Fn>
void parallel_chunks(std::uint64_t n, unsigned workers, Fn&& body)
{
  workers = std::max(1u, workers);
  std::atomic<std::uint64_t> next{0};
  auto loop = [&] {
    for (;;) {
      const std::uint64_t begin = next.fetch_add(kChunk);
      if (begin >= n) break;
      body(begin, std::min(n, begin + kChunk));
    }
  };
  if (workers == 1) {
    loop();
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(loop);
}

SystemParams make_params(const ExperimentConfig& cfg, const ResolvedGeometry& geo)
{
  SystemParams p;
  p.lambda_rrh = cfg.lambda_rrh;
  p.lambda_user = cfg.lambda_user;
  p.beta = cfg.beta;
  p.theta = cfg.theta_grid.empty() ? 1.0 : std::max(cfg.theta_grid.front(), 1e-300);
  p.window_radius = geo.window_radius;
  return p;
}

}  // namespace

std::string PolicyConfig::descriptor() const
{
  std::string base;
  switch (kind) {
    case Policy::threshold_random: base = "threshold-random"; break;
    case Policy::power_random: base = "power"; break;
    case Policy::nearest: base = "nearest"; break;
  }
  if (combining == Combining::mrc) base += "/mrc-" + std::to_string(num_selected);
  return base;
}

void ExperimentConfig::validate() const
{
  auto fail = [](const std::string& what) { throw std::invalid_argument("ExperimentConfig: " + what); };
  if (!(std::isfinite(lambda_rrh) && lambda_rrh > 0.0)) fail("lambda_rrh must be finite and > 0");
  if (!(std::isfinite(lambda_user) && lambda_user > 0.0)) fail("lambda_user must be finite and > 0");
  if (!(std::isfinite(beta) && beta > 2.0)) fail("beta must be > 2");
  if (n_trials < 1) fail("n_trials must be >= 1");
  if (theta_grid.empty()) fail("theta_grid must not be empty");
  for (std::size_t k = 0; k < theta_grid.size(); ++k) {
    if (!(std::isfinite(theta_grid[k]) && theta_grid[k] >= 0.0)) fail("theta values must be finite and >= 0");
    if (k > 0 && !(theta_grid[k] > theta_grid[k - 1])) fail("theta_grid must be strictly increasing");
  }
  if (window_radius && !(std::isfinite(*window_radius) && *window_radius > 0.0))
    fail("window_radius must be finite and > 0");
  if (policy.num_selected < 1) fail("num_selected must be >= 1");
  if (policy.combining == Combining::single && policy.num_selected != 1)
    fail("single-branch reception needs num_selected == 1; use MRC for L > 1");
  switch (policy.kind) {
    case Policy::threshold_random:
      if (!(std::isfinite(policy.r_th) && policy.r_th > 0.0)) fail("r_th must be finite and > 0");
      break;
    case Policy::power_random:
      if (!(std::isfinite(policy.p_th) && policy.p_th > 0.0)) fail("p_th must be finite and > 0");
      policy.shadowing.validate();
      break;
    case Policy::nearest:
      if (policy.num_selected != 1) fail("nearest selection serves a single RRH");
      break;
  }
}

ResolvedGeometry resolve_geometry(const ExperimentConfig& cfg)
{
  cfg.validate();
  const double relevant = relevant_radius(cfg);
  ResolvedGeometry geo;
  if (cfg.window_radius) {
    geo.window_radius = *cfg.window_radius;
  } else {
    const bool shadowed = cfg.policy.kind == Policy::power_random;
    const double scale = shadowed ? analytics::lognormal_moment(cfg.policy.shadowing, 1.0) : 1.0;
    const double tail = truncation_window_radius(cfg.lambda_user, cfg.theta_grid.back(), cfg.beta,
                                                 kTruncationBias, scale);
    geo.window_radius = std::max(default_window_radius(relevant, cfg.beta), tail);
  }
  geo.rrh_radius = std::min(relevant, geo.window_radius);
  return geo;
}

std::vector<TrialOutcome> run_trials(const ExperimentConfig& cfg)
{
  const ResolvedGeometry geo = resolve_geometry(cfg);
  const SystemParams params = make_params(cfg, geo);
  params.validate();

  std::vector<TrialOutcome> outcomes(cfg.n_trials);
  parallel_chunks(cfg.n_trials, cfg.workers, [&](std::uint64_t begin, std::uint64_t end) {
    Workspace ws;
    for (std::uint64_t t = begin; t < end; ++t) outcomes[t] = run_one(cfg, params, geo, t, ws);
  });
  return outcomes;
}

CcdfCurve curve_from_outcomes(std::span<const TrialOutcome> outcomes, std::span<const double> theta_grid)
{
  if (outcomes.empty()) throw std::invalid_argument("curve_from_outcomes: no trials");
  CcdfCurve curve;
  curve.theta_grid.assign(theta_grid.begin(), theta_grid.end());
  curve.n_trials = outcomes.size();
  curve.successes.assign(theta_grid.size(), 0);
  for (const auto& o : outcomes) {
    if (o.outage != OutageKind::none) continue;
    for (std::size_t k = 0; k < theta_grid.size(); ++k) {
      if (o.sir > theta_grid[k]) ++curve.successes[k];
    }
  }
  for (std::size_t k = 0; k < theta_grid.size(); ++k) {
    curve.estimates.push_back(static_cast<double>(curve.successes[k]) / static_cast<double>(curve.n_trials));
    curve.ci_half_width.push_back(stats::wilson_half_width(curve.successes[k], curve.n_trials));
  }
  return curve;
}

CcdfCurve estimate_ccdf(const ExperimentConfig& cfg)
{
  const auto outcomes = run_trials(cfg);
  CcdfCurve curve = curve_from_outcomes(outcomes, cfg.theta_grid);
  curve.policy = cfg.policy.descriptor();
  curve.window_radius = resolve_geometry(cfg).window_radius;
  return curve;
}

LossCurve loss_from_curves(const CcdfCurve& random_curve, const CcdfCurve& nearest_curve)
{
  if (random_curve.theta_grid != nearest_curve.theta_grid)
    throw std::invalid_argument("loss_from_curves: theta grids differ");
  LossCurve out;
  out.theta_grid = random_curve.theta_grid;
  for (std::size_t k = 0; k < out.theta_grid.size(); ++k) {
    const double pr = random_curve.estimates[k];
    const double pn = nearest_curve.estimates[k];
    if (pn <= 0.0) {
      out.ratio.emplace_back();
      out.ci_half_width.emplace_back();
      continue;
    }
    // Delta method for a ratio of independent proportions.
    const double a = random_curve.ci_half_width[k] / pn;
    const double b = pr * nearest_curve.ci_half_width[k] / (pn * pn);
    out.ratio.emplace_back(pr / pn);
    out.ci_half_width.emplace_back(std::sqrt(a * a + b * b));
  }
  return out;
}

LossCurve estimate_loss(const ExperimentConfig& random_cfg, const ExperimentConfig& nearest_cfg)
{
  if (random_cfg.policy.kind == Policy::nearest || nearest_cfg.policy.kind != Policy::nearest)
    throw std::invalid_argument("estimate_loss: expects a threshold policy and a nearest policy");
  return loss_from_curves(estimate_ccdf(random_cfg), estimate_ccdf(nearest_cfg));
}

stats::MeanEstimate estimate_candidate_count(const ExperimentConfig& cfg)
{
  if (cfg.policy.kind == Policy::nearest)
    throw std::invalid_argument("estimate_candidate_count: nearest selection has no candidate set");
  const ResolvedGeometry geo = resolve_geometry(cfg);
  const PolicyConfig& pol = cfg.policy;

  std::vector<double> counts(cfg.n_trials);
  parallel_chunks(cfg.n_trials, cfg.workers, [&](std::uint64_t begin, std::uint64_t end) {
    NetworkRealization net;
    std::vector<double> shadow;
    for (std::uint64_t t = begin; t < end; ++t) {
      const RngStream rng(cfg.master_seed, cfg.experiment_id, t);
      auto engine = rng.engine(Substream::rrh_points);
      sample_ppp(cfg.lambda_rrh, geo.rrh_radius, engine, net.rrh_points);
      std::size_t m = 0;
      if (pol.kind == Policy::threshold_random) {
        m = phase1_distance(net, pol.r_th).size();
      } else {
        shadow.resize(net.rrh_points.size());
        for (std::size_t i = 0; i < shadow.size(); ++i)
          shadow[i] = draw_shadowing(pol.shadowing, rng, Substream::shadowing_desired, {i, 0});
        m = phase1_power(net, shadow, cfg.beta, pol.p_th).size();
      }
      counts[t] = static_cast<double>(m);
    }
  });
  return stats::mean_estimate(counts);
}

}  // namespace rrhsel::mc
