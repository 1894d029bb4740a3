#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "rrhsel/rng.hpp"

namespace rrhsel {

struct Point {
  double x = 0.0;
  double y = 0.0;

  double norm2() const noexcept { return x * x + y * y; }
  double norm() const noexcept;
};

inline Point operator-(Point a, Point b) noexcept { return {a.x - b.x, a.y - b.y}; }

/**
 * Network parameters of one homogeneous-PPP world.
 *
 * Densities are in points/m^2, theta is a linear SIR target and
 * window_radius is the radius (m) of the simulation disc centred on the
 * typical user.
 */
struct SystemParams {
  double lambda_rrh = 0.0;
  double lambda_user = 0.0;
  double beta = 4.0;
  double theta = 1.0;
  double window_radius = 0.0;

  /// Throws std::invalid_argument unless every invariant holds.
  void validate() const;
};

/// One sampled world. The typical user sits at the origin and is not
/// part of user_points, which holds interferers only.
struct NetworkRealization {
  std::vector<Point> rrh_points;
  std::vector<Point> user_points;
  double window_radius = 0.0;
};

struct ShadowingModel {
  enum class Kind { none, lognormal };

  Kind kind = Kind::none;
  double sigma_db = 0.0;
  double mu_db = 0.0;

  static ShadowingModel none() { return {}; }
  static ShadowingModel lognormal(double sigma_db, double mu_db = 0.0)
  {
    return {Kind::lognormal, sigma_db, mu_db};
  }

  void validate() const;
};

/// Index pair of a radio link. user == 0 is the typical user; interferer
/// i of a realization is user i + 1.
struct LinkId {
  std::uint64_t rrh = 0;
  std::uint64_t user = 0;
};

/// Rayleigh fading in polar form: power ~ Exp(1), phase ~ U[0, 2pi).
/// Carrying the power explicitly lets the single-branch and MRC paths
/// share bit-identical link powers.
struct Fading {
  double power = 1.0;
  double phase = 0.0;

  std::complex<double> gain() const { return std::polar(std::sqrt(power), phase); }
};

/// Homogeneous PPP on a disc: Poisson count, then i.i.d. uniform points.
/// Throws std::invalid_argument on negative or non-finite inputs.
std::vector<Point> sample_ppp(double density, double radius, CounterEngine& engine);
void sample_ppp(double density, double radius, CounterEngine& engine, std::vector<Point>& out);
std::vector<Point> sample_ppp(double density, double radius, const RngStream& rng);

/// Independent RRH and interferer processes on the window disc.
NetworkRealization sample_network(const SystemParams& params, const RngStream& rng);

/// As above but RRHs are restricted to a disc of radius rrh_radius
/// (<= window_radius). The restriction of a PPP to a sub-disc is the PPP
/// of that sub-disc, so policies that never look beyond rrh_radius see the
/// same law at a fraction of the cost.
void sample_network(const SystemParams& params, const RngStream& rng, double rrh_radius,
                    NetworkRealization& out);

std::complex<double> draw_fading(const RngStream& rng, LinkId link);
Fading draw_fading_polar(const RngStream& rng, LinkId link);
/// |h|^2 of the same link; bit-identical to draw_fading_polar(...).power.
double draw_fading_power(const RngStream& rng, LinkId link);

/// Linear power factor S. Exactly 1 for Kind::none.
double draw_shadowing(const ShadowingModel& model, CounterEngine& engine);
double draw_shadowing(const ShadowingModel& model, const RngStream& rng, Substream tag, LinkId link);

/**
 * Default simulation radius: 30 times the policy's relevant radius, and
 * at least large enough that the mean interference from beyond the disc
 * is below 1e-3 of the mean interference from beyond unit distance.
 */
double default_window_radius(double relevant_radius, double beta);

/**
 * Radius beyond which dropping interferers changes the coverage at SIR
 * target theta by less than eps, for any serving distance.
 *
 * Bound: eps >= sup_d [d^beta e^(-c d^2)] * 2 pi lambda_u theta
 * W^(2 - beta) / (beta - 2), with c the full-plane interference constant.
 * power_scale multiplies the interferer density (mean interferer shadowing).
 */
double truncation_window_radius(double lambda_user, double theta, double beta, double eps = 1e-3,
                                double power_scale = 1.0);

}  // namespace rrhsel
