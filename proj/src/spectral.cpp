#include "dcl/spectral.hpp"

#include <array>
#include <cmath>
#include <vector>

#include "dcl/common.hpp"

namespace dcl {

namespace {

// One timestep (D, even layer, odd layer) on [0, xmax]; hops past xmax are
// dropped, which perturbs a localized bound state only at O(exp(-2 xmax / l_perp)).
void apply_step(std::vector<double>& z, double q, double p, int xmax) {
  const double g = q / (q * q + 1.0);
  const double create = p * (2.0 - p) / q;
  z[1] += create * z[0];
  z[0] *= (1.0 - p) * (1.0 - p);
  for (int m = 2; m <= xmax; m += 2) {
    const double w = z[m];
    if (w == 0) continue;
    z[m] = 0;
    z[m - 1] += g * w;
    if (m + 1 <= xmax) z[m + 1] += g * w;
  }
  for (int m = 1; m <= xmax; m += 2) {
    const double w = z[m];
    if (w == 0) continue;
    z[m] = 0;
    z[m - 1] += g * w;
    if (m + 1 <= xmax) z[m + 1] += g * w;
  }
}

}  // namespace

double band_edge(double q) {
  const double g = q / (q * q + 1.0);
  return 4.0 * g * g;
}

double leading_step_eigenvalue(double q, double p, int xmax, double tol,
                               long max_iters) {
  require(xmax >= 8, "xmax too small");
  std::vector<double> z(xmax + 1, 0.0);
  for (int m = 0; m <= xmax; ++m) z[m] = std::exp(-0.25 * m);
  double lam_prev2 = 0, lam_prev = 0, acc_prev = 0;
  for (long it = 0; it < max_iters; ++it) {
    double before = 0;
    for (const double v : z) before += v;
    apply_step(z, q, p, xmax);
    double after = 0;
    for (const double v : z) after += v;
    if (!(after > 0)) throw NumericsError("step operator lost all weight");
    const double lam = after / before;
    const double inv = 1.0 / after;
    for (double& v : z) v *= inv;
    // Aitken delta-squared on the eigenvalue sequence.
    if (it >= 2) {
      const double d1 = lam_prev - lam_prev2;
      const double d2 = lam - lam_prev;
      const double den = d2 - d1;
      const double acc = (std::abs(den) > 1e-300) ? lam - d2 * d2 / den : lam;
      if (it >= 4 && std::abs(acc - acc_prev) < tol * std::abs(acc) &&
          std::abs(lam - lam_prev) < 1e3 * tol * std::abs(lam))
        return acc;
      acc_prev = acc;
    }
    lam_prev2 = lam_prev;
    lam_prev = lam;
  }
  return acc_prev != 0 ? acc_prev : lam_prev;
}

KinkFit dp_kink_pc(double q) {
  const double edge = band_edge(q);

  // Coarse bracket of the depinning point from bound-state existence.
  auto bound_gap = [&](double p, int xmax, long iters) {
    return leading_step_eigenvalue(q, p, xmax, 1e-13, iters) - edge;
  };
  double lo = 0.02, hi = 0.98;
  {
    double last_bound = lo;
    for (double p = 0.05; p < 0.99; p += 0.05) {
      if (bound_gap(p, 300, 20000) > 1e-4 * edge)
        last_bound = p;
      else
        break;
    }
    lo = last_bound;
    hi = std::min(0.99, last_bound + 0.05);
    for (int i = 0; i < 6; ++i) {
      const double mid = 0.5 * (lo + hi);
      (bound_gap(mid, 500, 80000) > 3e-6 * edge ? lo : hi) = mid;
    }
  }
  const double p0 = hi;  // slightly above the detection boundary

  // Pinned-side samples; the bound state is exponentially localized there,
  // so a moderate xmax is exact to machine precision.
  std::vector<double> ps, gaps;
  for (const double dp : {0.004, 0.006, 0.009, 0.013, 0.019, 0.028, 0.04, 0.055}) {
    const double p = p0 - dp;
    if (p <= 0.01) continue;
    const double gap = bound_gap(p, 1600, 6000000L);
    if (gap > 1e-10 * edge) {
      ps.push_back(p);
      gaps.push_back(gap);
    }
  }
  if (ps.size() < 4) throw NumericsError("dp_kink_pc: too few pinned-side points");

  // Fit gap = a (pc-p)^2 + b (pc-p)^3 with pc on a refined grid.
  auto sse_at = [&](double pc, double* a_out) {
    double m11 = 0, m12 = 0, m22 = 0, v1 = 0, v2 = 0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const double u = pc - ps[i];
      if (u <= 0) return HUGE_VAL;
      const double f1 = u * u, f2 = u * u * u;
      m11 += f1 * f1;
      m12 += f1 * f2;
      m22 += f2 * f2;
      v1 += f1 * gaps[i];
      v2 += f2 * gaps[i];
    }
    const double det = m11 * m22 - m12 * m12;
    if (std::abs(det) < 1e-300) return HUGE_VAL;
    const double a = (m22 * v1 - m12 * v2) / det;
    const double b = (m11 * v2 - m12 * v1) / det;
    if (a_out) *a_out = a;
    double sse = 0;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      const double u = pc - ps[i];
      const double r = gaps[i] - a * u * u - b * u * u * u;
      // Relative residuals: gaps span two orders of magnitude.
      sse += (r / gaps[i]) * (r / gaps[i]);
    }
    return sse;
  };
  double best_pc = p0, best_sse = HUGE_VAL;
  double center = p0, width = 0.02;
  for (int level = 0; level < 5; ++level) {
    for (int i = -20; i <= 20; ++i) {
      const double pc = center + width * i / 20.0;
      const double s = sse_at(pc, nullptr);
      if (s < best_sse) {
        best_sse = s;
        best_pc = pc;
      }
    }
    center = best_pc;
    width /= 8.0;
  }
  KinkFit fit;
  fit.pc = best_pc;
  sse_at(best_pc, &fit.curvature);
  fit.rms = std::sqrt(best_sse / double(ps.size()));
  return fit;
}

}  // namespace dcl
