#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rrhsel/geometry.hpp"
#include "rrhsel/rng.hpp"

namespace rrhsel {

enum class Criterion { distance, power };

/// RRHs that passed the phase-1 test, as indices into the realization.
struct CandidateSet {
  std::vector<std::size_t> indices;
  Criterion criterion = Criterion::distance;
  double threshold = 0.0;  ///< R_th (m) or P_th (linear power)

  std::size_t size() const noexcept { return indices.size(); }
  bool empty() const noexcept { return indices.empty(); }
};

/// What to do when fewer than L candidates survive phase 1.
enum class PartialPolicy { outage, serve_available };

enum class OutageKind {
  none,
  empty_candidates,         ///< phase 1 produced nothing
  insufficient_candidates,  ///< 0 < |A| < L under PartialPolicy::outage
  low_sir,                  ///< served, SIR below target (set by callers)
};

struct SelectedSet {
  std::vector<std::size_t> indices;
  OutageKind outage = OutageKind::none;

  bool is_outage() const noexcept { return outage != OutageKind::none; }
};

/// Exactly the RRHs with ||d_i|| < r_th.
CandidateSet phase1_distance(const NetworkRealization& net, double r_th);

/// Exactly the RRHs with shadow[i] * ||d_i||^-beta > p_th. shadow holds one
/// factor per RRH of the realization.
CandidateSet phase1_power(const NetworkRealization& net, std::span<const double> shadow, double beta,
                          double p_th);

/// Uniformly random L-subset of the candidates (partial Fisher-Yates).
/// Returned indices are in draw order.
SelectedSet phase2_random(const CandidateSet& cands, int num_selected, CounterEngine& engine,
                          PartialPolicy partial = PartialPolicy::outage);

/// Index of the RRH closest to the origin, lowest index on ties; nullopt
/// when the realization has no RRH.
std::optional<std::size_t> select_nearest(const NetworkRealization& net);

/**
 * Single-branch SIR at RRH s.
 *
 * desired_gain and interferer_gain are per-link power gains (fading, times
 * shadowing when modelled); interferer_gain[i] belongs to user_points[i].
 * With no interference the SIR is +infinity.
 */
double sir_single(const NetworkRealization& net, std::size_t s, double beta, double desired_gain,
                  std::span<const double> interferer_gain);

/**
 * SIR after maximum ratio combining over the selected RRHs.
 *
 * Branch l has complex desired gain g_l = ||d_l||^(-beta/2) h_l and
 * interferer gains g_{l,i}. Combining with weights conj(g_l) gives signal
 * (sum |g_l|^2)^2 and interference sum_i |sum_l conj(g_l) g_{l,i}|^2.
 *
 * desired[l] is the fading of (selected[l], typical user); interferer is
 * row-major L x U with interferer[l * U + i] for (selected[l], user i).
 * For L = 1 the result is sir_single on the same powers, bit for bit.
 */
double sir_mrc(const NetworkRealization& net, std::span<const std::size_t> selected, double beta,
               std::span<const Fading> desired, std::span<const Fading> interferer);

/// d^-beta from a squared distance, with a fast path for beta = 4.
inline double pathloss_from_sq(double dist_sq, double beta) noexcept
{
  if (beta == 4.0) return 1.0 / (dist_sq * dist_sq);
  return std::pow(dist_sq, -0.5 * beta);
}

}  // namespace rrhsel
