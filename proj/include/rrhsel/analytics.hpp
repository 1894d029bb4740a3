#pragma once

#include "rrhsel/geometry.hpp"

namespace rrhsel::analytics {

/// Arguments of the threshold-based coverage expressions. r_th in metres,
/// densities in points/m^2, theta linear.
struct CoverageInputs {
  double r_th = 0.0;
  double theta = 1.0;
  double lambda_rrh = 0.0;
  double lambda_user = 0.0;
  double beta = 4.0;

  void validate() const;
};

/// Shadowing moments entering the power-threshold design.
struct ShadowMoments {
  double m_2beta = 1.0;  ///< E[S^(2/beta)]
  double m_inv = 1.0;    ///< E[1/S]
  double e_s = 1.0;      ///< E[S^(2/beta)] * E[1/S]^(2/beta)
};

/// Distance and received-power thresholds of the shadowed design.
struct PowerThreshold {
  double r_th_sh = 0.0;  ///< equivalent distance threshold, m
  double p_th = 0.0;     ///< received-power threshold, linear
};

/// Normalized sinc, sin(pi x) / (pi x), on 0 < x < 1.
double sinc_norm(double x);

/// c = pi * lambda_user * theta^(2/beta) / sinc(2/beta), in m^-2. The
/// Laplace transform of PPP interference at s = theta r^beta is exp(-c r^2).
double interference_scale(double lambda_user, double theta, double beta);

/// (1 - e^-z) / z with its z -> 0 limit handled by series.
double one_minus_exp_over(double z);

/// Coverage of threshold selection followed by one random candidate:
/// (1 - e^(-lambda pi R^2)) (1 - e^(-c R^2)) / (c R^2).
double sir_ccdf_exact(const CoverageInputs& in);

/// Rational approximation lambda pi R^2 / ((1 + lambda pi R^2)(1 + c R^2)).
/// Never exceeds sir_ccdf_exact since e^-x <= 1 / (1 + x).
double sir_ccdf_approx(const CoverageInputs& in);

/// Maximizer of sir_ccdf_approx in R: the radius where
/// (lambda pi R^2)(c R^2) = 1.
double threshold_opt_approx(double theta, double lambda_rrh, double lambda_user, double beta);

/// Coverage of nearest-RRH selection.
double sir_ccdf_nearest(double theta, double lambda_rrh, double lambda_user, double beta);

/// sir_ccdf_exact / sir_ccdf_nearest.
double relative_loss(const CoverageInputs& in);

/// f(x) = (1 - e^-x)(1 - e^(-1/x))(1/x + x), x > 0. Equal to relative_loss
/// at the approximate optimum with x = loss_argument(...).
double asymptotic_f(double x);

/// x = sqrt(lambda / lambda_user) * sqrt(sinc(2/beta)) / theta^(1/beta).
double loss_argument(double theta, double lambda_rrh, double lambda_user, double beta);

/// Closed-form lognormal moments; all ones for Kind::none.
ShadowMoments shadow_moments(const ShadowingModel& model, double beta);

/// Lognormal E[S^a] for an arbitrary real exponent a.
double lognormal_moment(const ShadowingModel& model, double a);

PowerThreshold threshold_opt_shadow(double theta, double lambda_rrh, double lambda_user, double beta,
                                    const ShadowMoments& moments);

/// Mean number of RRHs with propagation loss ||x||^beta / S below t:
/// lambda pi E[S^(2/beta)] t^(2/beta).
double intensity_measure(double t, double lambda_rrh, double beta, const ShadowMoments& moments);

/// Threshold for L-branch MRC: the single-RRH optimum at theta / L, i.e.
/// threshold_opt_approx * L^(1 / (2 beta)).
double threshold_opt_multi(int num_selected, double theta, double lambda_rrh, double lambda_user,
                           double beta);

/**
 * Mean number of RRHs that pass the power test S ||x||^-beta > 1/t but lie
 * outside radius rho. Lognormal S makes this a Black-Scholes-type call
 * expectation; it sizes the sampling disc of power-threshold simulations.
 */
double missed_power_candidates(double t, double rho, double lambda_rrh, double beta,
                               const ShadowingModel& model);

/// Clamp p into [0, 1]; rounding beyond 1e-12 is an internal error and
/// throws std::logic_error.
double clamp_probability(double p);

}  // namespace rrhsel::analytics
