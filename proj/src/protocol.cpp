#include "rrhsel/protocol.hpp"

#include <cmath>
#include <numbers>
#include <queue>
#include <stdexcept>

#include "rrhsel/analytics.hpp"
#include "rrhsel/geometry.hpp"

namespace rrhsel::proto {

namespace {

struct Later {
  bool operator()(const SwitchEvent& a, const SwitchEvent& b) const
  {
    if (a.arrival_time != b.arrival_time) return a.arrival_time > b.arrival_time;
    return a.rrh_index > b.rrh_index;
  }
};

}  // namespace

void SwitchConfig::validate() const
{
  if (!(std::isfinite(max_delay) && max_delay > 0.0)) throw std::invalid_argument("switch: D must be > 0");
  if (!(std::isfinite(fiber_offset) && fiber_offset >= 0.0))
    throw std::invalid_argument("switch: fiber offset must be >= 0");
  if (winners < 1) throw std::invalid_argument("switch: L must be >= 1");
}

SwitchRound run_switch_round(const CandidateSet& cands, const SwitchConfig& config, CounterEngine& engine)
{
  config.validate();
  SwitchRound round;
  round.cost.candidate_count = cands.size();
  if (cands.empty()) {
    round.outage = true;
    return round;
  }

  std::priority_queue<SwitchEvent, std::vector<SwitchEvent>, Later> queue;
  for (std::size_t idx : cands.indices) {
    queue.push({idx, config.fiber_offset + config.max_delay * engine.uniform(), 1});
  }
  round.cost.total_bits = cands.size();

  const auto wanted = static_cast<std::size_t>(config.winners);
  while (!queue.empty()) {
    const SwitchEvent ev = queue.top();
    queue.pop();
    round.events.push_back(ev);
    if (round.winners.size() < wanted) {
      round.winners.push_back(ev.rrh_index);
      ++round.cost.switch_comparisons;
      round.cost.selection_latency = ev.arrival_time;
      if (!queue.empty() && queue.top().arrival_time == ev.arrival_time) ++round.cost.delay_ties;
    }
  }
  return round;
}

CostReport nearest_round_cost(std::size_t candidate_count, int bits, const SwitchConfig& config)
{
  if (bits < 2) throw std::invalid_argument("nearest_round_cost: b must be >= 2");
  config.validate();
  CostReport cost;
  cost.candidate_count = candidate_count;
  cost.total_bits = candidate_count * static_cast<std::uint64_t>(bits);
  cost.switch_comparisons = candidate_count;
  cost.selection_latency = config.fiber_offset + config.max_delay;
  return cost;
}

double ThresholdRule::radius(double lambda_rrh) const
{
  if (kind == Kind::fixed) {
    if (!(std::isfinite(r_th) && r_th > 0.0)) throw std::invalid_argument("threshold rule: r_th must be > 0");
    return r_th;
  }
  return analytics::threshold_opt_approx(theta, lambda_rrh, lambda_user, beta);
}

void ComplexityConfig::validate() const
{
  if (lambdas.empty()) throw std::invalid_argument("compare_complexity: no densities");
  for (double l : lambdas) {
    if (!(std::isfinite(l) && l > 0.0)) throw std::invalid_argument("compare_complexity: densities must be > 0");
  }
  if (bits < 2) throw std::invalid_argument("compare_complexity: b must be >= 2");
  if (trials < 1) throw std::invalid_argument("compare_complexity: trials must be >= 1");
  switch_config.validate();
}

std::vector<ComplexityRow> compare_complexity(const ComplexityConfig& config)
{
  config.validate();
  std::vector<ComplexityRow> rows;
  const std::size_t n = config.trials;
  std::vector<double> m(n), rc(n), nc(n), rb(n), nb(n), rl(n), nl(n);

  for (std::size_t k = 0; k < config.lambdas.size(); ++k) {
    const double lambda = config.lambdas[k];
    const double r = config.rule.radius(lambda);
    const std::string id = "complexity/" + std::to_string(k);
    std::size_t empty = 0;
    std::vector<Point> pts;
    for (std::size_t t = 0; t < n; ++t) {
      const RngStream rng(config.master_seed, id, t);
      auto pts_engine = rng.engine(Substream::rrh_points);
      sample_ppp(lambda, r, pts_engine, pts);
      CandidateSet cands;
      for (std::size_t i = 0; i < pts.size(); ++i) cands.indices.push_back(i);

      auto sw_engine = rng.engine(Substream::protocol);
      const SwitchRound round = run_switch_round(cands, config.switch_config, sw_engine);
      CostReport random_cost = round.cost;
      if (round.outage) {
        ++empty;
        random_cost.switch_comparisons = 1;
        random_cost.selection_latency = config.switch_config.fiber_offset + config.switch_config.max_delay;
      }
      const CostReport near = nearest_round_cost(cands.size(), config.bits, config.switch_config);

      m[t] = static_cast<double>(cands.size());
      rc[t] = static_cast<double>(random_cost.switch_comparisons);
      nc[t] = static_cast<double>(near.switch_comparisons);
      rb[t] = static_cast<double>(random_cost.total_bits);
      nb[t] = static_cast<double>(near.total_bits);
      rl[t] = random_cost.selection_latency;
      nl[t] = near.selection_latency;
    }
    ComplexityRow row;
    row.lambda_rrh = lambda;
    row.r_th = r;
    row.candidates = stats::mean_estimate(m);
    row.random_comparisons = stats::mean_estimate(rc);
    row.nearest_comparisons = stats::mean_estimate(nc);
    row.random_bits = stats::mean_estimate(rb);
    row.nearest_bits = stats::mean_estimate(nb);
    row.random_latency = stats::mean_estimate(rl);
    row.nearest_latency = stats::mean_estimate(nl);
    row.empty_fraction = static_cast<double>(empty) / static_cast<double>(n);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace rrhsel::proto
