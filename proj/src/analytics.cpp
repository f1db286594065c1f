#include "dcl/analytics.hpp"

#include <cmath>

#include "dcl/common.hpp"
#include "dcl/walk.hpp"

namespace dcl {

namespace {

double linear_fit_slope(const std::vector<double>& x, const std::vector<double>& y,
                        double* rms = nullptr, double* icept_out = nullptr) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  if (det == 0) throw NumericsError("degenerate fit abscissae");
  const double slope = (n * sxy - sx * sy) / det;
  const double icept = (sy - slope * sx) / n;
  if (icept_out) *icept_out = icept;
  if (rms) {
    double acc = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - icept - slope * x[i];
      acc += r * r;
    }
    *rms = std::sqrt(acc / n);
  }
  return slope;
}

}  // namespace

double branch_point_w1(double q) {
  require(q >= 2, "q must be >= 2");
  const double s = q * q + 1.0;
  return s * s / (4.0 * q * q);
}

double laplace_za(double w, double p) {
  const double a = w * (1.0 - p) * (1.0 - p);
  if (std::abs(1.0 - a) < 1e-14)
    throw ConfigError("laplace_za evaluated at its pole (divergent series)");
  return a / (1.0 - a);
}

double laplace_zf(double w, double p, double q) {
  const double w1 = branch_point_w1(q);
  if (w > w1 * (1.0 + 1e-15))
    throw ConfigError("laplace_zf past the branch cut (w > w1)");
  const double root = std::sqrt(std::max(0.0, 1.0 - w / w1));
  return p * (2.0 - p) / (2.0 * q) * w * (q * q + 1.0) / q * (1.0 - root);
}

// Per-timestep renewal: a step either keeps the wall dead, with weight
// w(1-p)^2, or opens a first-return excursion; an excursion labeled t spans
// t-1 steps, so its block generating function is sum_t w^(t-1) Z_f(t)
// = z_f(w)/w. The dead-wall singularity therefore solves
//     (1-p)^2 w + z_f(w)/w = 1,
// which the DP growth rate reproduces to machine precision. (This differs
// from composing z_a and z_f on a common label clock; the labels carry a
// one-step offset on this lattice.)
static double renewal_block(double w, double p, double q) {
  return (1.0 - p) * (1.0 - p) * w + laplace_zf(w, p, q) / w;
}

double critical_p(double q) {
  require(q >= 2, "q must be >= 2");
  const double w1 = branch_point_w1(q);
  auto h = [&](double p) { return renewal_block(w1, p, q); };
  // h falls monotonically from w1 > 1 at p = 0 to (q^2+1)/(2q^2) < 1 at p = 1.
  double lo = 1e-12, hi = 1.0 - 1e-12;
  double prev = h(lo);
  for (int i = 1; i <= 64; ++i) {
    const double p = lo + (hi - lo) * i / 64.0;
    const double cur = h(p);
    if (cur > prev + 1e-12)
      throw NumericsError("renewal block not monotone on the bisection bracket");
    prev = cur;
  }
  if (!(h(lo) > 1.0 && h(hi) < 1.0))
    throw NumericsError("critical_p: no sign change on (0,1)");
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double pinned_singularity_w2(double p, double q) {
  require(p > 0.0 && p < 1.0, "p must lie in (0,1)");
  const double w1 = branch_point_w1(q);
  auto h = [&](double w) { return renewal_block(w, p, q); };
  double lo = 1e-12, hi = w1;
  if (!(h(hi) >= 1.0))
    throw NumericsError("pinned_singularity_w2: no root below w1 (depinned phase?)");
  while ((hi - lo) > 1e-14 * hi) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) < 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double free_energy(double p, double q) {
  require(p > 0.0 && p < 1.0, "p must lie in (0,1)");
  const double pc = critical_p(q);
  if (p >= pc) return 2.0 * std::log((q * q + 1.0) / (2.0 * q));
  return std::log(pinned_singularity_w2(p, q));
}

double excursion_tau(double p, double q) {
  const double pc = critical_p(q);
  if (p >= pc) throw ConfigError("excursion_tau needs p < p_c");
  const double w1 = branch_point_w1(q);
  const double w2 = pinned_singularity_w2(p, q);
  const double u = std::sqrt(1.0 - w2 / w1);
  return 1.0 + w2 / (2.0 * w1 * u * (1.0 - u));
}

double excursion_length(double p, double q) { return std::sqrt(excursion_tau(p, q)); }

double thermalization_time(double p, double q, double L) {
  require(p > 0.0 && p < 1.0, "t_c needs p in (0,1)");
  require(q >= 2 && L > 0, "t_c needs q >= 2 and L > 0");
  return L * std::log(1.0 / q) / std::log(1.0 - p);
}

double ThresholdEstimates::predict_mi(double p) const {
  const double lq = std::log(q);
  if (p < p_th1) return 2.0 * C * L;
  if (p > p_th2) return 0.0;
  return 2.0 * C * L - 2.0 * T * std::log((1.0 - p_th1) / (1.0 - p)) / lq;
}

ThresholdEstimates finite_rate_thresholds(double q, double C, double L, double T) {
  require(C > 0.0 && C < 1.0, "code rate must lie in (0,1)");
  require(q >= 2 && L > 0 && T > 0, "thresholds need q >= 2, L > 0, T > 0");
  ThresholdEstimates e;
  e.q = q;
  e.C = C;
  e.L = L;
  e.T = T;
  e.p_th1 = 1.0 - std::pow(q, -(1.0 - C) * L / (2.0 * T));
  e.p_th2 = 1.0 - std::pow(q, -(1.0 + C) * L / (2.0 * T));
  return e;
}

double prescramble_deficit(double P0, double gamma, double t, double q) {
  require(P0 >= 0.0 && P0 <= 1.0, "P0 outside [0,1]");
  require(t >= 0.0, "t must be >= 0");
  return (q * q - 1.0) / q * P0 / (P0 + (1.0 - P0) * std::exp(gamma * t));
}

PrescrambleFit fit_prescramble(double q, double p, int T, int t_max,
                               const std::vector<int>& a_fit_T) {
  PrescrambleFit fit;
  // gamma: logit P(t,T) decays linearly in the trailing scrambling window;
  // the first couple of steps carry a transient and are skipped.
  {
    WalkLattice lat = make_lattice(q, -1, T + t_max);
    for (int t = 0; t < T; ++t) walk_timestep(lat, true, p);
    std::vector<double> ts, logit;
    for (int t = 0; t <= t_max; ++t) {
      if (t > 0) walk_timestep(lat, false, 0.0);
      const double P = survival_probability(lat, 1);
      if (t >= 3 && P > 1e-12 && P < 1.0 - 1e-12) {
        ts.push_back(double(t));
        logit.push_back(std::log(P / (1.0 - P)));
      }
    }
    require(ts.size() >= 4, "prescramble gamma fit needs more usable points");
    double icept = 0;
    fit.gamma = -linear_fit_slope(ts, logit, &fit.gamma_rms, &icept);
    fit.p0_eff = 1.0 / (1.0 + std::exp(-icept));
  }
  // a: in the depinned phase 1 - P(0,T) ~ T^-a.
  if (a_fit_T.size() >= 2) {
    std::vector<double> lx, ly;
    for (const int t : a_fit_T) {
      WalkLattice lat = make_lattice(q, -1, t);
      for (int s = 0; s < t; ++s) walk_timestep(lat, true, p);
      const double P = survival_probability(lat, 1);
      lx.push_back(std::log(double(t)));
      ly.push_back(std::log(std::max(1e-300, 1.0 - P)));
    }
    fit.a = -linear_fit_slope(lx, ly, &fit.a_rms);
  }
  return fit;
}

}  // namespace dcl
