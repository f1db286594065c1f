#pragma once

#include <cstdint>
#include <vector>

namespace dcl {

// One aggregated measurement: observable y(p) at scale `size` (T or L),
// with standard error; `series` indexes the size family it belongs to.
struct FitPoint {
  double size = 0;
  double p = 0;
  double y = 0;
  double err = 0;
  int series = 0;
};

enum class CollapseKind {
  kPowerLaw,  // x = (p - pc) size^e1, y' = y size^e2
  kStep,      // x = (p - pc) size^e1, y' = y
};

struct CollapseModel {
  CollapseKind kind = CollapseKind::kPowerLaw;
  double pc = 0;
  double e1 = 0;  // 1/nu (power law) or omega (step)
  double e2 = 0;  // beta/nu (power law); unused for step
};

struct FitParamSpec {
  double lo = 0, hi = 1;
  bool fixed = false;
  double value = 0;
};

struct CollapseSpec {
  CollapseKind kind = CollapseKind::kPowerLaw;
  FitParamSpec pc, e1, e2;
  int bootstrap = 0;       // resamples for parameter errors (0 = skip)
  std::uint64_t seed = 1;  // bootstrap stream
};

struct CollapseFit {
  CollapseModel model;
  double quality = 0;  // master-curve residual Q (dimensionless)
  double pc_err = 0, e1_err = 0, e2_err = 0;
};

// Master-curve residual: each rescaled point is compared against a local
// weighted-linear fit through the bracketing points of the other series
// (Houdayer-Hartmann style); Q is the mean squared normalized deviation.
double collapse_quality(const std::vector<FitPoint>& pts,
                        const CollapseModel& model);

// Grid-refined minimization of Q over the free parameters.
CollapseFit fit_collapse(const std::vector<FitPoint>& pts,
                         const CollapseSpec& spec);

struct CrossingEstimate {
  double median = 0;
  double spread = 0;  // max - min over size pairs
  std::vector<double> pairwise;
};

// Pairwise intersections of I(p) curves for different sizes via monotone
// piecewise-linear interpolation on the shared grid.
CrossingEstimate crossing_point(const std::vector<FitPoint>& pts);

// Regularized upper incomplete gamma Q(a, x); chi-square tail probability is
// Q(dof/2, chi2/2).
double gamma_q(double a, double x);

struct PowerLawScan {
  double pc = 0;            // smallest p consistent with algebraic decay
  double beta_over_nu = 0;  // -slope of the log-log fit at pc
  double slope_err = 0;
  std::vector<double> pvalues;  // per grid point, ascending p
};

// The estimation recipe for the Clifford transition: scan p ascending and
// pick the smallest grid point whose I(T) series is consistent with a
// power-law decay to zero (chi-square p-value >= alpha, negative slope).
PowerLawScan estimate_pc_power_law(const std::vector<FitPoint>& pts,
                                   double alpha = 0.05);

}  // namespace dcl
