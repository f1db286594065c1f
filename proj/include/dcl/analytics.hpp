#pragma once

#include <vector>

namespace dcl {

// Closed-form machinery for the boundary-pinned domain wall: discrete
// Laplace transforms of the partition sums, the critical dissipation
// strength, free energy, and excursion statistics. Logs are natural unless
// stated otherwise; free energies are per timestep.

// w1(q) = (q^2+1)^2 / (4 q^2), the branch point of laplace_zf.
double branch_point_w1(double q);

// z_a(w) = w(1-p)^2 / (1 - w(1-p)^2); throws on the pole.
double laplace_za(double w, double p);

// z_f(w) = [p(2-p)/(2q)] [w(q^2+1)/q] [1 - sqrt(1 - w/w1)]; throws past the
// branch cut w > w1.
double laplace_zf(double w, double p, double q);

// Critical strength: the dead-wall renewal singularity reaches the branch
// point, (1-p)^2 w1 + z_f(w1)/w1 = 1. Bisected to |dp| < 1e-12 after
// verifying monotonicity on a grid. Matches the DP free-energy kink.
double critical_p(double q);

// Pinned-phase singularity: root w2 <= w1 of (1-p)^2 w + z_f(w)/w = 1.
double pinned_singularity_w2(double p, double q);

// f(p) = log w2 for p < p_c, and 2 log((q^2+1)/(2q)) for p >= p_c.
double free_energy(double p, double q);

// tau = d(ln z_f)/d(ln w) at w2: typical excursion duration.
double excursion_tau(double p, double q);
// l_perp = sqrt(tau); diverges as (p_c - p)^(-1/2).
double excursion_length(double p, double q);

// t_c = L log(1/q) / log(1-p); the first-order thermalization scale.
double thermalization_time(double p, double q, double L);

struct ThresholdEstimates {
  double p_th1 = 0, p_th2 = 0;  // scaling estimates, O(1) prefactors unknown
  double q = 2, C = 0.5, L = 0, T = 0;
  // Piecewise two-trajectory prediction for the finite-rate annealed MI.
  double predict_mi(double p) const;
};
ThresholdEstimates finite_rate_thresholds(double q, double C, double L, double T);

// Mutual-information deficit after t pre-scrambling steps given P0 = P(0,T)
// and the phenomenological bulk-survival decay rate gamma. Natural-log
// units: equals (2 - I) ln q for the log_q-normalized I at small deficit.
double prescramble_deficit(double P0, double gamma, double t, double q);

struct PrescrambleFit {
  double gamma = 0;   // decay rate per timestep of the bulk survival weight
  double a = 0;       // P(0,T) = 1 - O(T^-a) exponent in the depinned phase
  double p0_eff = 0;  // fitted effective P(0,T) (logit intercept)
  double gamma_rms = 0, a_rms = 0;  // fit residuals (diagnostics)
};

// Fits gamma (and the effective intercept) from logit P(t,T) vs t over the
// window t in [3, t_max] of one DP run, and a from the T-dependence of
// 1 - P(0,T) (meaningful for p > p_c, where the wall depins).
PrescrambleFit fit_prescramble(double q, double p, int T, int t_max,
                               const std::vector<int>& a_fit_T);

}  // namespace dcl
