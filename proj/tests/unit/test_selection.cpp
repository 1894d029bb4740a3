#include <doctest.h>

#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>

#include "rrhsel/selection.hpp"
#include "rrhsel/stats.hpp"

using namespace rrhsel;
using doctest::Approx;

namespace {

NetworkRealization small_net()
{
  NetworkRealization net;
  net.rrh_points = {{10, 0}, {0, 20}, {-30, 0}, {0, -5}, {40, 40}};
  net.user_points = {{100, 0}, {0, 150}};
  net.window_radius = 1000;
  return net;
}

}  // namespace

TEST_CASE("distance phase 1 is exactly the open disc")
{
  const auto net = small_net();
  const auto c = phase1_distance(net, 20.0);
  CHECK(c.indices == std::vector<std::size_t>{0, 3});
  CHECK(c.criterion == Criterion::distance);
  CHECK(phase1_distance(net, 20.0 + 1e-9).indices == std::vector<std::size_t>{0, 1, 3});
  CHECK(phase1_distance(net, 1.0).empty());
  CHECK_THROWS_AS(phase1_distance(net, 0.0), std::invalid_argument);
}

TEST_CASE("power phase 1 includes shadowing")
{
  const auto net = small_net();
  std::vector<double> shadow(5, 1.0);
  // Threshold between 20^-4 and 10^-4.
  const double p_th = 0.5 * (std::pow(20.0, -4) + std::pow(10.0, -4));
  CHECK(phase1_power(net, shadow, 4.0, p_th).indices == std::vector<std::size_t>{0, 3});
  shadow[2] = 1e3;  // 30^-4 * 1e3 > p_th
  CHECK(phase1_power(net, shadow, 4.0, p_th).indices == std::vector<std::size_t>{0, 2, 3});
  CHECK_THROWS_AS(phase1_power(net, std::vector<double>(4, 1.0), 4.0, p_th), std::invalid_argument);
}

TEST_CASE("random phase 2 picks uniformly")
{
  CandidateSet c;
  c.indices = {2, 4, 6, 8, 10};
  std::map<std::size_t, std::uint64_t> hits;
  const int n = 50000;
  for (int t = 0; t < n; ++t) {
    auto e = RngStream(1, "p2", static_cast<std::uint64_t>(t)).engine(Substream::selection);
    const auto s = phase2_random(c, 1, e);
    REQUIRE(s.indices.size() == 1);
    ++hits[s.indices[0]];
  }
  std::vector<std::uint64_t> obs;
  for (auto idx : c.indices) obs.push_back(hits[idx]);
  CHECK(stats::chi_square_test(obs, std::vector<double>(5, 0.2)).p_value > 0.01);
}

TEST_CASE("random phase 2 draws uniform L-subsets")
{
  CandidateSet c;
  c.indices = {0, 1, 2, 3, 4};
  std::map<std::set<std::size_t>, std::uint64_t> hits;
  for (int t = 0; t < 50000; ++t) {
    auto e = RngStream(2, "p2L", static_cast<std::uint64_t>(t)).engine(Substream::selection);
    const auto s = phase2_random(c, 2, e);
    REQUIRE(s.indices.size() == 2);
    REQUIRE(s.indices[0] != s.indices[1]);
    ++hits[{s.indices.begin(), s.indices.end()}];
  }
  REQUIRE(hits.size() == 10);
  std::vector<std::uint64_t> obs;
  for (const auto& [k, v] : hits) obs.push_back(v);
  CHECK(stats::chi_square_test(obs, std::vector<double>(10, 0.1)).p_value > 0.01);
}

TEST_CASE("partial candidate sets")
{
  CandidateSet c;
  c.indices = {3, 7};
  CounterEngine e(5);
  CHECK(phase2_random(CandidateSet{}, 1, e).outage == OutageKind::empty_candidates);
  CHECK(phase2_random(c, 3, e).outage == OutageKind::insufficient_candidates);
  const auto s = phase2_random(c, 3, e, PartialPolicy::serve_available);
  CHECK(s.outage == OutageKind::none);
  CHECK(std::set<std::size_t>(s.indices.begin(), s.indices.end()) == std::set<std::size_t>{3, 7});
  CHECK_THROWS_AS(phase2_random(c, 0, e), std::invalid_argument);
}

TEST_CASE("nearest selection")
{
  auto net = small_net();
  CHECK(select_nearest(net) == std::optional<std::size_t>{3});
  net.rrh_points.push_back({5, 0});
  net.rrh_points.push_back({0, 5});
  CHECK(select_nearest(net) == std::optional<std::size_t>{3});  // tie with 6, lowest index wins
  net.rrh_points.clear();
  CHECK_FALSE(select_nearest(net).has_value());
}

TEST_CASE("single-branch SIR by hand")
{
  const auto net = small_net();
  const std::vector<double> g{2.0, 0.5};
  // RRH 0 at (10,0): users at distance 90 and sqrt(100 + 22500).
  const double signal = 1.5 * std::pow(10.0, -4);
  const double interference = 2.0 * std::pow(90.0, -4) + 0.5 * std::pow(100.0 + 22500.0, -2);
  CHECK(sir_single(net, 0, 4.0, 1.5, g) == Approx(signal / interference).epsilon(1e-14));
  // Non-integer exponent goes through pow.
  const double s3 = std::pow(10.0, -3.0) / (2.0 * std::pow(90.0, -3.0) + 0.5 * std::pow(22600.0, -1.5));
  CHECK(sir_single(net, 0, 3.0, 1.0, g) == Approx(s3).epsilon(1e-13));
  NetworkRealization lonely = net;
  lonely.user_points.clear();
  CHECK(sir_single(lonely, 0, 4.0, 1.0, {}) == std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(sir_single(net, 9, 4.0, 1.0, g), std::out_of_range);
}

TEST_CASE("MRC with one branch is the single-branch SIR bit for bit")
{
  const auto net = small_net();
  RngStream rng(3, "mrc1", 0);
  for (std::size_t s = 0; s < net.rrh_points.size(); ++s) {
    const std::vector<std::size_t> sel{s};
    const std::vector<Fading> d{draw_fading_polar(rng, {s, 0})};
    std::vector<Fading> in;
    std::vector<double> pw;
    for (std::size_t i = 0; i < net.user_points.size(); ++i) {
      in.push_back(draw_fading_polar(rng, {s, i + 1}));
      pw.push_back(draw_fading_power(rng, {s, i + 1}));
    }
    const double a = sir_mrc(net, sel, 4.0, d, in);
    const double b = sir_single(net, s, 4.0, draw_fading_power(rng, {s, 0}), pw);
    CHECK(a == b);
  }
}

TEST_CASE("two-branch MRC by hand")
{
  NetworkRealization net;
  net.rrh_points = {{1, 0}, {0, 1}};
  net.user_points = {{3, 0}};
  const std::vector<std::size_t> sel{0, 1};
  // Desired gains h = (1, i); interferer gains (1, 1).
  const std::vector<Fading> d{{1.0, 0.0}, {1.0, std::numbers::pi / 2}};
  const std::vector<Fading> in{{1.0, 0.0}, {1.0, 0.0}};
  // Desired path gains are 1, so w = conj(h) and the combined power is 2.
  // Interferer amplitudes: d0 = 2 -> 1/4, d1 = sqrt(10) -> 1/10.
  const std::complex<double> z = std::conj(std::complex<double>(1, 0)) * 0.25 +
                                 std::conj(std::complex<double>(0, 1)) * 0.1;
  const double expected = 4.0 / std::norm(z);
  CHECK(sir_mrc(net, sel, 4.0, d, in) == Approx(expected).epsilon(1e-12));
  CHECK_THROWS_AS(sir_mrc(net, sel, 4.0, d, std::vector<Fading>(1)), std::invalid_argument);
}
