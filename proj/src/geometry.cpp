#include "rrhsel/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace rrhsel {

double Point::norm() const noexcept { return std::hypot(x, y); }

void SystemParams::validate() const
{
  auto fail = [](const std::string& what) { throw std::invalid_argument("SystemParams: " + what); };
  if (!(std::isfinite(lambda_rrh) && lambda_rrh > 0.0)) fail("lambda_rrh must be finite and > 0");
  if (!(std::isfinite(lambda_user) && lambda_user > 0.0)) fail("lambda_user must be finite and > 0");
  if (!(std::isfinite(beta) && beta > 2.0)) fail("beta must be > 2 (aggregate interference diverges otherwise)");
  if (!(std::isfinite(theta) && theta > 0.0)) fail("theta must be > 0 (linear scale)");
  if (!(std::isfinite(window_radius) && window_radius > 0.0)) fail("window_radius must be > 0");
}

void ShadowingModel::validate() const
{
  if (kind == Kind::none) return;
  if (!(std::isfinite(sigma_db) && sigma_db >= 0.0))
    throw std::invalid_argument("ShadowingModel: sigma_db must be finite and >= 0");
  if (!std::isfinite(mu_db)) throw std::invalid_argument("ShadowingModel: mu_db must be finite");
}

void sample_ppp(double density, double radius, CounterEngine& engine, std::vector<Point>& out)
{
  if (!(std::isfinite(density) && density >= 0.0))
    throw std::invalid_argument("sample_ppp: density must be finite and >= 0");
  if (!(std::isfinite(radius) && radius > 0.0))
    throw std::invalid_argument("sample_ppp: radius must be finite and > 0");

  out.clear();
  const double mean = density * std::numbers::pi * radius * radius;
  if (mean <= 0.0) return;

  std::poisson_distribution<std::uint64_t> count_dist(mean);
  const std::uint64_t n = count_dist(engine);
  out.reserve(n);
  // Rejection from the bounding square: exact uniform law, no trigonometry.
  while (out.size() < n) {
    const double u = 2.0 * engine.uniform() - 1.0;
    const double v = 2.0 * engine.uniform() - 1.0;
    if (u * u + v * v < 1.0) out.push_back({radius * u, radius * v});
  }
}

std::vector<Point> sample_ppp(double density, double radius, CounterEngine& engine)
{
  std::vector<Point> pts;
  sample_ppp(density, radius, engine, pts);
  return pts;
}

std::vector<Point> sample_ppp(double density, double radius, const RngStream& rng)
{
  auto engine = rng.engine(Substream::rrh_points);
  return sample_ppp(density, radius, engine);
}

void sample_network(const SystemParams& params, const RngStream& rng, double rrh_radius,
                    NetworkRealization& out)
{
  params.validate();
  if (!(rrh_radius > 0.0 && rrh_radius <= params.window_radius))
    throw std::invalid_argument("sample_network: rrh_radius must lie in (0, window_radius]");
  auto rrh_engine = rng.engine(Substream::rrh_points);
  auto user_engine = rng.engine(Substream::user_points);
  sample_ppp(params.lambda_rrh, rrh_radius, rrh_engine, out.rrh_points);
  sample_ppp(params.lambda_user, params.window_radius, user_engine, out.user_points);
  out.window_radius = params.window_radius;
}

NetworkRealization sample_network(const SystemParams& params, const RngStream& rng)
{
  NetworkRealization net;
  sample_network(params, rng, params.window_radius, net);
  return net;
}

Fading draw_fading_polar(const RngStream& rng, LinkId link)
{
  auto engine = rng.engine(Substream::fading, link.rrh, link.user);
  const double power = -std::log(engine.uniform_open());
  const double phase = 2.0 * std::numbers::pi * engine.uniform();
  return {power, phase};
}

double draw_fading_power(const RngStream& rng, LinkId link)
{
  auto engine = rng.engine(Substream::fading, link.rrh, link.user);
  return -std::log(engine.uniform_open());
}

std::complex<double> draw_fading(const RngStream& rng, LinkId link)
{
  return draw_fading_polar(rng, link).gain();
}

double draw_shadowing(const ShadowingModel& model, CounterEngine& engine)
{
  if (model.kind == ShadowingModel::Kind::none) return 1.0;
  std::normal_distribution<double> db(model.mu_db, model.sigma_db);
  return std::pow(10.0, db(engine) / 10.0);
}

double draw_shadowing(const ShadowingModel& model, const RngStream& rng, Substream tag, LinkId link)
{
  if (model.kind == ShadowingModel::Kind::none) return 1.0;
  auto engine = rng.engine(tag, link.rrh, link.user);
  return draw_shadowing(model, engine);
}

double default_window_radius(double relevant_radius, double beta)
{
  if (!(relevant_radius > 0.0 && std::isfinite(relevant_radius)))
    throw std::invalid_argument("default_window_radius: relevant_radius must be finite and > 0");
  if (!(beta > 2.0)) throw std::invalid_argument("default_window_radius: beta must be > 2");
  // Tail of mean interference beyond R relative to beyond 1 m is R^(2 - beta).
  const double tail_radius = std::pow(10.0, 3.0 / (beta - 2.0));
  return std::max(30.0 * relevant_radius, tail_radius);
}

double truncation_window_radius(double lambda_user, double theta, double beta, double eps, double power_scale)
{
  if (!(lambda_user > 0.0 && std::isfinite(lambda_user)))
    throw std::invalid_argument("truncation_window_radius: lambda_user must be finite and > 0");
  if (!(theta >= 0.0 && std::isfinite(theta))) throw std::invalid_argument("truncation_window_radius: bad theta");
  if (!(beta > 2.0)) throw std::invalid_argument("truncation_window_radius: beta must be > 2");
  if (!(eps > 0.0) || !(power_scale > 0.0))
    throw std::invalid_argument("truncation_window_radius: eps and power_scale must be > 0");
  if (theta == 0.0) return 0.0;
  const double pi = std::numbers::pi;
  const double delta = 2.0 / beta;
  const double lu = lambda_user * power_scale;
  const double c = pi * lu * std::pow(theta, delta) * (pi * delta) / std::sin(pi * delta);
  const double peak = std::pow(beta / (2.0 * std::numbers::e * c), beta / 2.0);
  const double need = 2.0 * pi * lu * theta * peak / ((beta - 2.0) * eps);
  return std::pow(need, 1.0 / (beta - 2.0));
}

}  // namespace rrhsel
