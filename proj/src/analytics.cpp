#include "rrhsel/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rrhsel::analytics {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDbToNeper = std::numbers::ln10 / 10.0;

void require(bool ok, const char* what)
{
  if (!ok) throw std::domain_error(what);
}

void check_common(double theta, double lambda_rrh, double lambda_user, double beta)
{
  require(std::isfinite(theta) && theta >= 0.0, "theta must be finite and >= 0");
  require(std::isfinite(lambda_rrh) && lambda_rrh > 0.0, "lambda_rrh must be finite and > 0");
  require(std::isfinite(lambda_user) && lambda_user > 0.0, "lambda_user must be finite and > 0");
  require(std::isfinite(beta) && beta > 2.0, "beta must be > 2");
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

}  // namespace

void CoverageInputs::validate() const
{
  check_common(theta, lambda_rrh, lambda_user, beta);
  require(r_th > 0.0 && !std::isnan(r_th), "r_th must be > 0");
}

double clamp_probability(double p)
{
  constexpr double kSlack = 1e-12;
  if (std::isnan(p) || p < -kSlack || p > 1.0 + kSlack)
    throw std::logic_error("probability out of range: " + std::to_string(p));
  return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p);
}

double sinc_norm(double x)
{
  require(x > 0.0 && x < 1.0, "sinc_norm: argument must lie in (0, 1)");
  const double px = kPi * x;
  if (px < 1e-4) return 1.0 - px * px / 6.0;
  return std::sin(px) / px;
}

double interference_scale(double lambda_user, double theta, double beta)
{
  require(std::isfinite(lambda_user) && lambda_user > 0.0, "lambda_user must be finite and > 0");
  require(std::isfinite(theta) && theta >= 0.0, "theta must be finite and >= 0");
  require(std::isfinite(beta) && beta > 2.0, "beta must be > 2");
  const double delta = 2.0 / beta;
  return kPi * lambda_user * std::pow(theta, delta) / sinc_norm(delta);
}

double one_minus_exp_over(double z)
{
  if (z < 1e-6) return 1.0 - z / 2.0 + z * z / 6.0;
  return -std::expm1(-z) / z;
}

double sir_ccdf_exact(const CoverageInputs& in)
{
  in.validate();
  const double r2 = in.r_th * in.r_th;
  const double mean_candidates = in.lambda_rrh * kPi * r2;
  const double c = interference_scale(in.lambda_user, in.theta, in.beta);
  return clamp_probability(-std::expm1(-mean_candidates) * one_minus_exp_over(c * r2));
}

double sir_ccdf_approx(const CoverageInputs& in)
{
  in.validate();
  const double r2 = in.r_th * in.r_th;
  const double a = in.lambda_rrh * kPi * r2;
  const double b = interference_scale(in.lambda_user, in.theta, in.beta) * r2;
  if (std::isinf(a)) return 0.0;
  return clamp_probability(a / ((1.0 + a) * (1.0 + b)));
}

double threshold_opt_approx(double theta, double lambda_rrh, double lambda_user, double beta)
{
  check_common(theta, lambda_rrh, lambda_user, beta);
  require(theta > 0.0, "threshold_opt_approx: theta must be > 0");
  // Written as (lambda pi) * c = pi^2 lambda lambda_u theta^(2/beta) / sinc(2/beta).
  const double product = lambda_rrh * kPi * interference_scale(lambda_user, theta, beta);
  return std::pow(product, -0.25);
}

double sir_ccdf_nearest(double theta, double lambda_rrh, double lambda_user, double beta)
{
  check_common(theta, lambda_rrh, lambda_user, beta);
  const double delta = 2.0 / beta;
  const double served = lambda_rrh * sinc_norm(delta);
  return clamp_probability(served / (lambda_user * std::pow(theta, delta) + served));
}

double relative_loss(const CoverageInputs& in)
{
  return sir_ccdf_exact(in) / sir_ccdf_nearest(in.theta, in.lambda_rrh, in.lambda_user, in.beta);
}

double asymptotic_f(double x)
{
  require(x > 0.0 && std::isfinite(x), "asymptotic_f: x must be finite and > 0");
  return -std::expm1(-x) * -std::expm1(-1.0 / x) * (1.0 / x + x);
}

double loss_argument(double theta, double lambda_rrh, double lambda_user, double beta)
{
  check_common(theta, lambda_rrh, lambda_user, beta);
  require(theta > 0.0, "loss_argument: theta must be > 0");
  return std::sqrt(lambda_rrh / lambda_user) * std::sqrt(sinc_norm(2.0 / beta)) /
         std::pow(theta, 1.0 / beta);
}

double lognormal_moment(const ShadowingModel& model, double a)
{
  model.validate();
  if (model.kind == ShadowingModel::Kind::none) return 1.0;
  const double mu = model.mu_db * kDbToNeper;
  const double sigma = model.sigma_db * kDbToNeper;
  return std::exp(a * mu + 0.5 * a * a * sigma * sigma);
}

ShadowMoments shadow_moments(const ShadowingModel& model, double beta)
{
  require(std::isfinite(beta) && beta > 2.0, "beta must be > 2");
  model.validate();
  if (model.kind == ShadowingModel::Kind::none) return {};
  const double delta = 2.0 / beta;
  ShadowMoments m;
  m.m_2beta = lognormal_moment(model, delta);
  m.m_inv = lognormal_moment(model, -1.0);
  m.e_s = m.m_2beta * std::pow(m.m_inv, delta);
  return m;
}

PowerThreshold threshold_opt_shadow(double theta, double lambda_rrh, double lambda_user, double beta,
                                    const ShadowMoments& moments)
{
  require(moments.m_2beta > 0.0 && moments.m_inv > 0.0 && moments.e_s > 0.0,
          "shadow moments must be > 0");
  // E_S scales the interference constant, i.e. acts as lambda_u -> lambda_u E_S.
  const double r_sh = threshold_opt_approx(theta, lambda_rrh, lambda_user, beta) * std::pow(moments.e_s, -0.25);
  PowerThreshold out;
  out.r_th_sh = r_sh;
  out.p_th = std::pow(moments.m_2beta, beta / 2.0) * std::pow(r_sh, -beta);
  return out;
}

double intensity_measure(double t, double lambda_rrh, double beta, const ShadowMoments& moments)
{
  require(t >= 0.0 && !std::isnan(t), "intensity_measure: t must be >= 0");
  require(std::isfinite(lambda_rrh) && lambda_rrh > 0.0, "lambda_rrh must be finite and > 0");
  require(std::isfinite(beta) && beta > 2.0, "beta must be > 2");
  return lambda_rrh * kPi * moments.m_2beta * std::pow(t, 2.0 / beta);
}

double threshold_opt_multi(int num_selected, double theta, double lambda_rrh, double lambda_user,
                           double beta)
{
  require(num_selected >= 1, "threshold_opt_multi: L must be >= 1");
  return threshold_opt_approx(theta, lambda_rrh, lambda_user, beta) *
         std::pow(static_cast<double>(num_selected), 1.0 / (2.0 * beta));
}

double missed_power_candidates(double t, double rho, double lambda_rrh, double beta,
                               const ShadowingModel& model)
{
  require(t > 0.0 && rho >= 0.0, "missed_power_candidates: t must be > 0 and rho >= 0");
  model.validate();
  const double delta = 2.0 / beta;
  const double k = rho * rho;
  const bool random = model.kind == ShadowingModel::Kind::lognormal && model.sigma_db > 0.0;
  const double mu = model.kind == ShadowingModel::Kind::lognormal ? model.mu_db * kDbToNeper : 0.0;
  // Y = delta * ln(S t) ~ N(m, s^2); the count is lambda pi E[(e^Y - rho^2)^+].
  const double m = delta * (std::log(t) + mu);
  if (!random) return lambda_rrh * kPi * std::max(0.0, std::exp(m) - k);
  const double s = delta * model.sigma_db * kDbToNeper;
  if (k == 0.0) return lambda_rrh * kPi * std::exp(m + 0.5 * s * s);
  const double d2 = (m - std::log(k)) / s;
  const double d1 = d2 + s;
  const double call = std::exp(m + 0.5 * s * s) * normal_cdf(d1) - k * normal_cdf(d2);
  return lambda_rrh * kPi * std::max(0.0, call);
}

}  // namespace rrhsel::analytics
