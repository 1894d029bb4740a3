#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace rrhsel::stats {

/// Two-sided 95% normal quantile.
inline constexpr double kZ95 = 1.959963984540054;

/// Half-width of the Wilson score interval for successes / n.
double wilson_half_width(std::uint64_t successes, std::uint64_t n, double z = kZ95);

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  double ci_half_width = 0.0;  ///< 95%, normal approximation
  double variance = 0.0;       ///< unbiased sample variance
  std::uint64_t n = 0;
};

/// Sample mean and spread. Accumulates in index order so the result does
/// not depend on how the samples were produced.
MeanEstimate mean_estimate(std::span<const double> samples);

struct KsResult {
  double statistic = 0.0;
  double p_value = 0.0;
};

/// One-sample two-sided Kolmogorov-Smirnov test against a continuous CDF.
KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Asymptotic Kolmogorov survival function with Stephens' small-sample
/// correction.
double ks_p_value(double statistic, std::uint64_t n);

struct ChiSquareResult {
  double statistic = 0.0;
  double dof = 0.0;
  double p_value = 0.0;
};

/// Pearson goodness of fit of observed counts to category probabilities.
ChiSquareResult chi_square_test(std::span<const std::uint64_t> observed,
                                std::span<const double> probabilities);

}  // namespace rrhsel::stats
