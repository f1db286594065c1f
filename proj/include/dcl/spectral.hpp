#pragma once

namespace dcl {

// Spectral view of the one-timestep transfer operator on the semi-infinite
// lattice: detects the pinned-phase bound state as a leading eigenvalue
// above the free-walk band edge 4 g(q)^2 = 1/w1. This gives a DP-side
// location of the depinning point sharp enough to compare against the
// closed-form bisection root at the 1e-3 level, which a finite-T scan of
// -log Z / T cannot resolve (its critical fan has width T^(-1/2)).

double band_edge(double q);

// Leading eigenvalue of the truncated step operator by accelerated power
// iteration (Aitken extrapolation on the eigenvalue sequence).
double leading_step_eigenvalue(double q, double p, int xmax, double tol,
                               long max_iters);

struct KinkFit {
  double pc = 0;        // fitted depinning point
  double curvature = 0; // lambda - edge ~ curvature * (pc - p)^2
  double rms = 0;       // fit residual
};

// Locates the free-energy kink: fits lambda(p) - edge = a (pc-p)^2 (1 + b (pc-p))
// over pinned-side points and returns the fitted pc.
KinkFit dp_kink_pc(double q);

}  // namespace dcl
