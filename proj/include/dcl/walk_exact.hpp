#pragma once

#include <vector>

#include "dcl/common.hpp"

namespace dcl {

// Exact-arithmetic restricted sums used to pin the DP conventions against
// the closed forms. Scalar is double or an exact rational type.

// Z_a(t): weight of the no-wall history over t timesteps (one dissipation
// event per step, each contributing (1-p)^2).
template <class Scalar>
Scalar za_weight(const Scalar& p, int t) {
  Scalar w(1);
  const Scalar stay = (Scalar(1) - p) * (Scalar(1) - p);
  for (int i = 0; i < t; ++i) w *= stay;
  return w;
}

// First-return weights Z_f(t) for t = 2..tmax (returned[t-2]): the wall is
// created by the dissipation event opening the window and the weight is
// harvested when a boundary-layer gate annihilates it. Annihilation during
// DP timestep j carries the label t = j + 1.
template <class Scalar>
std::vector<Scalar> first_return_series(const Scalar& q, const Scalar& p,
                                        int tmax) {
  require(tmax >= 2, "first-return series needs tmax >= 2");
  const Scalar g = q / (q * q + Scalar(1));
  const Scalar create = p * (Scalar(2) - p) / q;
  const int cap = 2 * tmax + 4;
  std::vector<Scalar> z(cap, Scalar(0));
  z[1] = create;  // dissipation event of timestep 1
  int hi = 1;
  std::vector<Scalar> out;
  out.reserve(tmax - 1);
  for (int step = 1; step <= tmax - 1; ++step) {
    // Even layer (interior): never reaches m = 0.
    for (int m = 2; m <= std::min(hi, cap - 2); m += 2) {
      const Scalar w = z[m];
      if (w == Scalar(0)) continue;
      z[m] = Scalar(0);
      z[m - 1] += g * w;
      z[m + 1] += g * w;
    }
    hi = std::min(hi + 1, cap - 1);
    // Odd (boundary) layer: the 1 -> 0 branch is the first return.
    Scalar harvest(0);
    for (int m = 1; m <= std::min(hi, cap - 2); m += 2) {
      const Scalar w = z[m];
      if (w == Scalar(0)) continue;
      z[m] = Scalar(0);
      if (m == 1)
        harvest += g * w;
      else
        z[m - 1] += g * w;
      z[m + 1] += g * w;
    }
    hi = std::min(hi + 1, cap - 1);
    out.push_back(harvest);  // label t = step + 1
  }
  return out;
}

// N_{2k} = C(2k, k) - C(2k, k+1): first-return walk counts on the rotated
// square lattice (the Catalan numbers).
inline unsigned long long walk_count(int two_k) {
  require(two_k >= 0 && two_k % 2 == 0 && two_k <= 60, "walk_count domain");
  const int k = two_k / 2;
  auto binom = [](int n, int r) -> unsigned long long {
    if (r < 0 || r > n) return 0;
    unsigned long long acc = 1;
    for (int i = 1; i <= r; ++i) acc = acc * (n - r + i) / i;
    return acc;
  };
  return binom(two_k, k) - binom(two_k, k + 1);
}

}  // namespace dcl
