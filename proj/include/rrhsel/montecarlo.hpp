#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rrhsel/geometry.hpp"
#include "rrhsel/selection.hpp"
#include "rrhsel/stats.hpp"

namespace rrhsel::mc {

enum class Policy {
  threshold_random,  ///< distance threshold, then uniform pick
  power_random,      ///< received-power threshold, then uniform pick
  nearest,           ///< closest RRH of the whole realization
};

enum class Combining { single, mrc };

struct PolicyConfig {
  Policy kind = Policy::threshold_random;
  double r_th = 0.0;      ///< m, threshold_random
  double p_th = 0.0;      ///< linear, power_random
  int num_selected = 1;   ///< L
  Combining combining = Combining::single;
  PartialPolicy partial = PartialPolicy::outage;
  ShadowingModel shadowing;  ///< power_random: desired and interferer links

  /// Short label such as "threshold-random", "nearest", "power", "mrc-2".
  std::string descriptor() const;
};

struct ExperimentConfig {
  double lambda_rrh = 0.0;
  double lambda_user = 0.0;
  double beta = 4.0;
  PolicyConfig policy;
  std::vector<double> theta_grid;  ///< linear, strictly increasing
  std::uint64_t n_trials = 0;
  std::uint64_t master_seed = 0;
  std::string experiment_id = "default";
  std::optional<double> window_radius;  ///< automatic when unset
  unsigned workers = 1;

  /// Throws std::invalid_argument; called before any trial runs.
  void validate() const;
};

/// Sampling discs actually used by a configuration.
struct ResolvedGeometry {
  double window_radius = 0.0;  ///< interferer disc
  double rrh_radius = 0.0;     ///< RRH disc, never beyond window_radius
};

ResolvedGeometry resolve_geometry(const ExperimentConfig& cfg);

struct TrialOutcome {
  double sir = 0.0;  ///< meaningful only when outage == none
  OutageKind outage = OutageKind::none;
  std::uint32_t candidates = 0;     ///< |A|, or RRH count for nearest
  double selected_distance = 0.0;   ///< ||d_s|| of the first selected RRH
};

/// Runs every trial. outcomes[i] depends only on (master_seed,
/// experiment_id, i), whatever the worker count.
std::vector<TrialOutcome> run_trials(const ExperimentConfig& cfg);

struct CcdfCurve {
  std::vector<double> theta_grid;
  std::vector<double> estimates;
  std::vector<double> ci_half_width;  ///< 95% Wilson
  std::vector<std::uint64_t> successes;
  std::uint64_t n_trials = 0;
  std::string policy;
  double window_radius = 0.0;
};

/// Fraction of trials with SIR > theta; outages fail at every theta.
CcdfCurve curve_from_outcomes(std::span<const TrialOutcome> outcomes, std::span<const double> theta_grid);

CcdfCurve estimate_ccdf(const ExperimentConfig& cfg);

struct LossCurve {
  std::vector<double> theta_grid;
  std::vector<std::optional<double>> ratio;  ///< empty where nearest coverage is 0
  std::vector<std::optional<double>> ci_half_width;
};

LossCurve loss_from_curves(const CcdfCurve& random_curve, const CcdfCurve& nearest_curve);

/// Ratio of the threshold-random curve to the nearest curve. Both configs
/// must share the theta grid.
LossCurve estimate_loss(const ExperimentConfig& random_cfg, const ExperimentConfig& nearest_cfg);

/// Mean phase-1 candidate count. Uses the same RRH and shadowing streams
/// as run_trials, so counts agree trial by trial.
stats::MeanEstimate estimate_candidate_count(const ExperimentConfig& cfg);

}  // namespace rrhsel::mc
