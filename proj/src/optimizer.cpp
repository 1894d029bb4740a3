#include "rrhsel/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rrhsel/analytics.hpp"

namespace rrhsel::opt {

namespace {

constexpr double kWiden = 100.0;

struct Objective {
  analytics::CoverageInputs base;

  double operator()(double log_r) const
  {
    analytics::CoverageInputs in = base;
    in.r_th = std::exp(log_r);
    return analytics::sir_ccdf_exact(in);
  }
};

struct Peak {
  double log_r;
  double value;
};

Peak golden_section(const Objective& f, double lo, double hi, double tol)
{
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  Peak best{c, fc};
  if (fd > best.value) best = {d, fd};
  for (double x : {a, b, 0.5 * (a + b)}) {
    const double v = f(x);
    if (v > best.value) best = {x, v};
  }
  return best;
}

std::vector<double> log_grid(double lo, double hi, int n)
{
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) xs[static_cast<std::size_t>(k)] = lo + (hi - lo) * k / (n - 1);
  return xs;
}

/// Indices of grid local maxima within tol of the global maximum.
std::vector<std::size_t> top_peaks(const std::vector<double>& vals, double tol)
{
  const double vmax = *std::max_element(vals.begin(), vals.end());
  std::vector<std::size_t> out;
  const std::size_t n = vals.size();
  for (std::size_t k = 0; k < n; ++k) {
    const bool left_ok = k == 0 || vals[k] > vals[k - 1];
    const bool right_ok = k + 1 == n || vals[k] >= vals[k + 1];
    if (left_ok && right_ok && vals[k] >= vmax - tol) out.push_back(k);
  }
  return out;
}

}  // namespace

OptResult optimize_threshold_numeric(double theta, double lambda_rrh, double lambda_user, double beta,
                                     const OptimizerOptions& options)
{
  if (!(options.rel_tol > 0.0)) throw std::invalid_argument("optimizer: rel_tol must be > 0");
  if (options.grid_points < 200) throw std::invalid_argument("optimizer: grid_points must be >= 200");
  if (options.max_widenings < 0) throw std::invalid_argument("optimizer: max_widenings must be >= 0");

  OptResult res;
  res.r_star_approx = analytics::threshold_opt_approx(theta, lambda_rrh, lambda_user, beta);
  const Objective f{{res.r_star_approx, theta, lambda_rrh, lambda_user, beta}};
  res.p_at_approx = f(std::log(res.r_star_approx));

  double lo = std::log(res.r_star_approx / kWiden);
  double hi = std::log(res.r_star_approx * kWiden);
  int grid_n = options.grid_points;
  std::vector<double> xs;
  std::vector<double> vals;
  std::vector<std::size_t> peaks;

  for (;;) {
    xs = log_grid(lo, hi, grid_n);
    vals.resize(xs.size());
    std::transform(xs.begin(), xs.end(), vals.begin(), f);
    peaks = top_peaks(vals, options.plateau_tol);
    const auto arg = static_cast<std::size_t>(std::max_element(vals.begin(), vals.end()) - vals.begin());
    const bool at_lo = arg == 0;
    const bool at_hi = arg + 1 == vals.size();
    if (!at_lo && !at_hi) break;
    if (res.widenings >= options.max_widenings) {
      res.boundary_optimum = true;
      res.warnings.emplace_back(at_lo ? "optimum at lower bracket edge" : "optimum at upper bracket edge");
      break;
    }
    ++res.widenings;
    const double step = std::log(kWiden);
    if (at_lo) lo -= step;
    else hi += step;
    grid_n += options.grid_points;
  }

  if (peaks.size() > 1) {
    res.multimodal_warning = true;
    res.warnings.emplace_back("several near-equal local maxima; grid densified and each refined");
    grid_n *= 4;
    xs = log_grid(lo, hi, grid_n);
    vals.resize(xs.size());
    std::transform(xs.begin(), xs.end(), vals.begin(), f);
    peaks = top_peaks(vals, options.plateau_tol);
  }

  Peak best{std::log(res.r_star_approx), res.p_at_approx};
  for (std::size_t k : peaks) {
    Peak p{xs[k], vals[k]};
    if (!res.boundary_optimum || (k > 0 && k + 1 < xs.size())) {
      const double a = xs[k == 0 ? 0 : k - 1];
      const double b = xs[std::min(k + 1, xs.size() - 1)];
      const Peak refined = golden_section(f, a, b, options.rel_tol);
      if (refined.value > p.value) p = refined;
    }
    if (p.value > best.value) best = p;
  }

  res.bracket = {std::exp(lo), std::exp(hi)};
  res.r_star_numeric = std::exp(best.log_r);
  res.p_at_numeric = best.value;
  res.relative_gap = res.p_at_numeric > 0.0 ? (res.p_at_numeric - res.p_at_approx) / res.p_at_numeric : 0.0;
  return res;
}

}  // namespace rrhsel::opt
