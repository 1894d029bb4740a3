#include "rrhsel/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace rrhsel::stats {

double wilson_half_width(std::uint64_t successes, std::uint64_t n, double z)
{
  if (n == 0) throw std::invalid_argument("wilson_half_width: n must be > 0");
  if (successes > n) throw std::invalid_argument("wilson_half_width: successes exceed n");
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  return z / (1.0 + z2 / nn) * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
}

MeanEstimate mean_estimate(std::span<const double> samples)
{
  MeanEstimate out;
  out.n = samples.size();
  if (samples.empty()) throw std::invalid_argument("mean_estimate: no samples");
  // Welford.
  double mean = 0.0;
  double m2 = 0.0;
  std::uint64_t k = 0;
  for (double x : samples) {
    ++k;
    const double delta = x - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (x - mean);
  }
  out.mean = mean;
  if (k > 1) {
    out.variance = m2 / static_cast<double>(k - 1);
    out.std_error = std::sqrt(out.variance / static_cast<double>(k));
    out.ci_half_width = kZ95 * out.std_error;
  }
  return out;
}

double ks_p_value(double statistic, std::uint64_t n)
{
  if (n == 0) throw std::invalid_argument("ks_p_value: n must be > 0");
  const double sn = std::sqrt(static_cast<double>(n));
  const double lambda = (sn + 0.12 + 0.11 / sn) * statistic;
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf)
{
  if (samples.empty()) throw std::invalid_argument("ks_test: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return {d, ks_p_value(d, samples.size())};
}

ChiSquareResult chi_square_test(std::span<const std::uint64_t> observed,
                                std::span<const double> probabilities)
{
  if (observed.size() != probabilities.size() || observed.size() < 2)
    throw std::invalid_argument("chi_square_test: need >= 2 matching categories");
  double total = 0.0;
  for (auto c : observed) total += static_cast<double>(c);
  if (total <= 0.0) throw std::invalid_argument("chi_square_test: no observations");
  ChiSquareResult out;
  for (std::size_t k = 0; k < observed.size(); ++k) {
    const double expected = total * probabilities[k];
    if (!(expected > 0.0)) throw std::invalid_argument("chi_square_test: expected count must be > 0");
    const double diff = static_cast<double>(observed[k]) - expected;
    out.statistic += diff * diff / expected;
  }
  out.dof = static_cast<double>(observed.size() - 1);
  out.p_value = boost::math::gamma_q(out.dof / 2.0, out.statistic / 2.0);
  return out;
}

}  // namespace rrhsel::stats
