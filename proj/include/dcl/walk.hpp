#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dcl/rng.hpp"

namespace dcl {

// Ising domain-wall weights on the brickwork lattice. The wall coordinate m
// counts boundary-adjacent up-spins: m = 0 means no wall (annihilated at the
// left interface), m in [1, L-1] is a wall on the bond between sites m-1 and
// m, and m = L (finite lattices only) is the all-up absorbing slot reached by
// hopping off the right edge.
//
// One dissipative timestep, contracted backwards from the top boundary,
// applies: dissipation D, then the even gate layer (moves even m), then the
// odd gate layer (moves odd m; annihilates 1 -> 0, absorbs L-1 -> L). This
// alignment reproduces Z_a(t) = (1-p)^(2t) and the first-return closed form
// Z_f(t) = [p(2-p)/q] (q/(q^2+1))^(2t-3) N_(2t-4) exactly.
struct WalkLattice {
  double q = 2;
  int L = -1;  // -1: semi-infinite
  std::vector<double> z;
  int hi = 0;             // highest occupied slot
  double log_norm = 0.0;  // accumulated log of per-step normalizations
};

// `t_budget` sizes the semi-infinite vector for the causal cone.
WalkLattice make_lattice(double q, int L, int t_budget);

// One timestep; `strength` is the depolarization strength of this step's
// dissipation event (ignored when dissipation_on is false).
void walk_timestep(WalkLattice& lat, bool dissipation_on, double strength);

// ln of the unnormalized partition sum.
double walk_total_log(const WalkLattice& lat);

// P(x0, t) = sum_{y >= x0} z(y) / sum_y z(y)  (right-absorbed slot included).
double survival_probability(const WalkLattice& lat, int x0);

// I(P) = log_q[(q^2 - q(q-1)P) / (1 + (q-1)P)], in units of log q.
double annealed_mi(double P, double q);

enum class WalkNoise { kDeterministic, kRandomTimes };

struct AnnealedConfig {
  double q = 2;
  int L = -1;  // -1: semi-infinite (single-pair only)
  int T = 0;
  int prescramble_depth = 0;
  WalkNoise noise = WalkNoise::kDeterministic;
  int realizations = 1;      // random-times mode: disorder realizations
  std::uint64_t seed = 1;
  bool finite_rate = false;
  int x0 = 1;                // single-pair mode: reference site, 1-indexed
  double code_rate = 0.5;    // finite-rate mode
  void validate() const;
};

// Evenly spaced Bell sites (1-indexed) for a code rate C; C*L must be
// integral. C = 1/2 gives the alternate sites 1, 3, 5, ...
std::vector<int> finite_rate_sites(int L, double C);

// Runs T dissipative timesteps at strength p followed by the dissipation-free
// pre-scrambling window (the DP runs backwards in time, so pre-scrambling
// trails). `fire_mask`, when non-null, selects which of the T steps carry a
// full-strength dissipation event (random-times mode).
WalkLattice run_walk(const AnnealedConfig& cfg, double p,
                     const std::vector<bool>* fire_mask = nullptr);

// Annealed mutual information at one grid point. Deterministic mode is a
// single DP pass; random-times mode averages I over disorder realizations.
double annealed_mi_point(const AnnealedConfig& cfg, double p);

// (p, I) records over a dissipation grid; points run in parallel.
std::vector<std::pair<double, double>> annealed_mi_curve(
    const AnnealedConfig& cfg, const std::vector<double>& p_grid,
    int threads = 0);

// Finite-rate annealed MI, I = log_q(S+/S-) with S± = sum_y z(y) q^(±n>=(y)),
// computed in log space and clamped to [0, 2CL].
double finite_rate_mi_from_lattice(const WalkLattice& lat,
                                   const std::vector<int>& bell_sites);
double finite_rate_mi_point(const AnnealedConfig& cfg, double p);

}  // namespace dcl
