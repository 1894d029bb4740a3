#pragma once

#include <string>
#include <utility>
#include <vector>

namespace rrhsel::opt {

struct OptimizerOptions {
  double rel_tol = 1e-6;      ///< golden-section stopping width, relative in R
  int grid_points = 241;      ///< coarse log-grid size over the bracket
  int max_widenings = 4;      ///< x100 bracket extensions when the argmax hits an edge
  double plateau_tol = 1e-6;  ///< local maxima this close to the max count as rival peaks
};

struct OptResult {
  double r_star_numeric = 0.0;
  double p_at_numeric = 0.0;
  double r_star_approx = 0.0;
  double p_at_approx = 0.0;
  double relative_gap = 0.0;  ///< (p_numeric - p_approx) / p_numeric
  bool boundary_optimum = false;
  bool multimodal_warning = false;
  int widenings = 0;
  std::pair<double, double> bracket;  ///< final search bracket in R
  std::vector<std::string> warnings;
};

/// Maximizes the exact coverage over R_th: coarse grid in ln R, then
/// golden-section refinement of the best cell.
OptResult optimize_threshold_numeric(double theta, double lambda_rrh, double lambda_user, double beta,
                                     const OptimizerOptions& options = {});

}  // namespace rrhsel::opt
