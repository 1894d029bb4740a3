#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rrhsel/geometry.hpp"
#include "rrhsel/stats.hpp"

using namespace rrhsel;

TEST_CASE("SystemParams validation")
{
  SystemParams p{1e-5, 1e-6, 4.0, 1.0, 1000.0};
  CHECK_NOTHROW(p.validate());
  auto bad = p;
  bad.beta = 2.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = p;
  bad.lambda_rrh = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = p;
  bad.window_radius = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = p;
  bad.lambda_user = std::nan("");
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("PPP count is Poisson with mean density * area")
{
  const double density = 1e-4;
  const double radius = 300.0;
  const double mean = density * std::numbers::pi * radius * radius;
  const int n = 20000;
  std::vector<double> counts;
  for (int t = 0; t < n; ++t) {
    auto e = RngStream(9, "ppp", static_cast<std::uint64_t>(t)).engine(Substream::rrh_points);
    counts.push_back(static_cast<double>(sample_ppp(density, radius, e).size()));
  }
  const auto est = stats::mean_estimate(counts);
  CHECK(std::abs(est.mean - mean) < 4.0 * est.std_error);
  CHECK(est.variance == doctest::Approx(mean).epsilon(0.05));
}

TEST_CASE("PPP points are uniform on the disc")
{
  const double radius = 50.0;
  std::vector<double> r2;
  for (int t = 0; r2.size() < 20000; ++t) {
    auto e = RngStream(3, "uni", static_cast<std::uint64_t>(t)).engine(Substream::rrh_points);
    for (const auto& p : sample_ppp(0.01, radius, e)) {
      REQUIRE(p.norm() <= radius);
      r2.push_back(p.norm2() / (radius * radius));
    }
  }
  // ||x||^2 / R^2 is U(0,1) for a uniform point on the disc.
  const auto ks = stats::ks_test(r2, [](double u) { return std::clamp(u, 0.0, 1.0); });
  CHECK(ks.p_value > 0.01);
}

TEST_CASE("sample_ppp rejects bad input and handles zero density")
{
  CounterEngine e(1);
  CHECK_THROWS_AS(sample_ppp(-1.0, 10.0, e), std::invalid_argument);
  CHECK_THROWS_AS(sample_ppp(1.0, -10.0, e), std::invalid_argument);
  CHECK_THROWS_AS(sample_ppp(1.0, 0.0, e), std::invalid_argument);
  CHECK(sample_ppp(0.0, 10.0, e).empty());
}

TEST_CASE("network realization is reproducible and RRHs respect the sub-disc")
{
  SystemParams p{1e-4, 1e-5, 4.0, 1.0, 2000.0};
  RngStream rng(11, "net", 4);
  NetworkRealization a;
  NetworkRealization b;
  sample_network(p, rng, 300.0, a);
  sample_network(p, rng, 300.0, b);
  REQUIRE(a.rrh_points.size() == b.rrh_points.size());
  REQUIRE(a.user_points.size() == b.user_points.size());
  for (std::size_t i = 0; i < a.rrh_points.size(); ++i) {
    CHECK(a.rrh_points[i].x == b.rrh_points[i].x);
    CHECK(a.rrh_points[i].norm() <= 300.0);
  }
  for (const auto& u : a.user_points) CHECK(u.norm() <= 2000.0);
  CHECK_THROWS_AS(sample_network(p, rng, 3000.0, a), std::invalid_argument);
}

TEST_CASE("Rayleigh power is Exp(1) and the polar form agrees bit for bit")
{
  RngStream rng(2, "fade", 0);
  std::vector<double> powers;
  for (std::uint64_t i = 0; i < 20000; ++i) {
    const Fading f = draw_fading_polar(rng, {i, i + 1});
    const double pw = draw_fading_power(rng, {i, i + 1});
    REQUIRE(f.power == pw);
    REQUIRE(f.phase >= 0.0);
    REQUIRE(f.phase < 2.0 * std::numbers::pi);
    CHECK(std::norm(draw_fading(rng, {i, i + 1})) == doctest::Approx(pw).epsilon(1e-12));
    powers.push_back(pw);
  }
  const auto ks = stats::ks_test(powers, [](double x) { return x <= 0 ? 0.0 : -std::expm1(-x); });
  CHECK(ks.p_value > 0.01);
}

TEST_CASE("lognormal shadowing has the configured dB moments")
{
  const auto model = ShadowingModel::lognormal(8.0, 1.5);
  CounterEngine e(77);
  std::vector<double> db;
  for (int i = 0; i < 50000; ++i) db.push_back(10.0 * std::log10(draw_shadowing(model, e)));
  const auto est = stats::mean_estimate(db);
  CHECK(std::abs(est.mean - 1.5) < 4.0 * est.std_error);
  CHECK(std::sqrt(est.variance) == doctest::Approx(8.0).epsilon(0.02));

  CounterEngine e2(1);
  CHECK(draw_shadowing(ShadowingModel::none(), e2) == 1.0);
  CHECK_THROWS_AS(ShadowingModel::lognormal(-1.0).validate(), std::invalid_argument);
}

TEST_CASE("default window radius")
{
  CHECK(default_window_radius(250.0, 4.0) == doctest::Approx(7500.0));
  // Tail rule dominates for small relevant radii.
  CHECK(default_window_radius(1.0, 4.0) == doctest::Approx(std::pow(10.0, 1.5)));
}

TEST_CASE("truncation window bounds the coverage bias")
{
  const double pi = std::numbers::pi;
  for (double beta : {3.0, 4.0, 5.0}) {
    for (double theta : {0.1, 1.0, 100.0}) {
      const double lu = 1e-6 / pi;
      const double w = truncation_window_radius(lu, theta, beta, 1e-3);
      // Worst case over the serving distance, evaluated on a fine grid.
      const double delta = 2.0 / beta;
      const double c = pi * lu * std::pow(theta, delta) * pi * delta / std::sin(pi * delta);
      double worst = 0.0;
      for (double d = 1.0; d < 1e6; d *= 1.001) {
        const double tail = 2.0 * pi * lu * theta * std::pow(d, beta) * std::pow(w, 2.0 - beta) / (beta - 2.0);
        worst = std::max(worst, std::exp(-c * d * d) * tail);
      }
      CAPTURE(beta);
      CAPTURE(theta);
      CHECK(worst <= 1e-3 * (1 + 1e-9));
      CHECK(worst >= 0.99e-3);
    }
  }
  CHECK(truncation_window_radius(1e-6, 0.0, 4.0) == 0.0);
  CHECK_THROWS_AS(truncation_window_radius(1e-6, 1.0, 2.0), std::invalid_argument);
}
