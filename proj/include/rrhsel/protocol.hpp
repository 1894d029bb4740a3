#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rrhsel/rng.hpp"
#include "rrhsel/selection.hpp"
#include "rrhsel/stats.hpp"

namespace rrhsel::proto {

/// One report reaching the fronthaul switch.
struct SwitchEvent {
  std::size_t rrh_index = 0;
  double arrival_time = 0.0;  ///< s
  std::uint32_t payload_bits = 1;
};

struct CostReport {
  std::size_t candidate_count = 0;  ///< M
  std::uint64_t total_bits = 0;
  std::uint64_t switch_comparisons = 0;
  double selection_latency = 0.0;  ///< s
  std::uint64_t delay_ties = 0;    ///< equal arrival times seen at the decision
};

struct SwitchConfig {
  double max_delay = 1e-3;    ///< D, delays are uniform on [0, D]
  double fiber_offset = 0.0;  ///< constant propagation delay added to every report
  int winners = 1;            ///< L, the first L arrivals are served

  void validate() const;
};

struct SwitchRound {
  std::vector<std::size_t> winners;  ///< RRH indices in arrival order
  bool outage = false;
  CostReport cost;
  std::vector<SwitchEvent> events;  ///< in arrival order
};

/**
 * Random-delay arbitration. Every candidate waits an independent
 * uniform delay and sends a 1-bit symbol; the switch serves the first
 * arrivals. Ties go to the lowest RRH index and are counted.
 */
SwitchRound run_switch_round(const CandidateSet& cands, const SwitchConfig& config, CounterEngine& engine);

/// Cost of nearest selection over M candidates reporting b-bit distances.
/// The switch closes its window at D, then scans all M reports.
CostReport nearest_round_cost(std::size_t candidate_count, int bits, const SwitchConfig& config);

struct ThresholdRule {
  enum class Kind { fixed, optimal } kind = Kind::fixed;
  double r_th = 0.0;  ///< fixed rule
  double lambda_user = 0.0;  ///< optimal rule: R_th follows the closed-form optimum
  double theta = 1.0;
  double beta = 4.0;

  double radius(double lambda_rrh) const;
};

struct ComplexityConfig {
  std::vector<double> lambdas;
  ThresholdRule rule;
  int bits = 4;  ///< b >= 2
  std::uint64_t trials = 10000;
  std::uint64_t master_seed = 0;
  SwitchConfig switch_config;

  void validate() const;
};

struct ComplexityRow {
  double lambda_rrh = 0.0;
  double r_th = 0.0;
  stats::MeanEstimate candidates;
  stats::MeanEstimate random_comparisons;
  stats::MeanEstimate nearest_comparisons;
  stats::MeanEstimate random_bits;
  stats::MeanEstimate nearest_bits;
  stats::MeanEstimate random_latency;
  stats::MeanEstimate nearest_latency;
  double empty_fraction = 0.0;
};

/**
 * Mean per-round costs of random and nearest selection for each density.
 * An empty candidate set still costs the random switch its one idle
 * decision at D; nearest then does no comparison.
 */
std::vector<ComplexityRow> compare_complexity(const ComplexityConfig& config);

}  // namespace rrhsel::proto
