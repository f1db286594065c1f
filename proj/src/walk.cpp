#include "dcl/walk.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "dcl/common.hpp"

namespace dcl {

namespace {

inline double hop_weight(double q) { return q / (q * q + 1.0); }

// log(exp(a) + exp(b)) without overflow.
inline double log_add(double a, double b) {
  if (a == -HUGE_VAL) return b;
  if (b == -HUGE_VAL) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

void renormalize(WalkLattice& lat) {
  double sum = 0;
  for (int m = 0; m <= lat.hi; ++m) sum += lat.z[m];
  if (!(sum > 0)) throw NumericsError("walk lattice lost all weight");
  const double inv = 1.0 / sum;
  for (int m = 0; m <= lat.hi; ++m) lat.z[m] *= inv;
  lat.log_norm += std::log(sum);
}

}  // namespace

WalkLattice make_lattice(double q, int L, int t_budget) {
  require(q >= 2, "on-site dimension q must be >= 2");
  WalkLattice lat;
  lat.q = q;
  lat.L = L;
  if (L < 0) {
    lat.z.assign(std::size_t(2) * t_budget + 4, 0.0);
  } else {
    require(L >= 2 && L % 2 == 0, "finite lattice size must be even and >= 2");
    lat.z.assign(std::size_t(L) + 1, 0.0);
  }
  lat.z[0] = 1.0;
  lat.hi = 0;
  return lat;
}

void walk_timestep(WalkLattice& lat, bool dissipation_on, double strength) {
  const double g = hop_weight(lat.q);
  std::vector<double>& z = lat.z;
  if (dissipation_on) {
    const double create = strength * (2.0 - strength) / lat.q;
    z[1] += create * z[0];
    z[0] *= (1.0 - strength) * (1.0 - strength);
    lat.hi = std::max(lat.hi, 1);
  }
  const int top = (lat.L < 0) ? int(z.size()) - 2 : lat.L;
  // Even layer: moves walls at even m in [2, top-2] (interior bonds only).
  {
    const int mmax = std::min(lat.hi, top - 2);
    for (int m = 2; m <= mmax; m += 2) {
      const double w = z[m];
      if (w == 0) continue;
      z[m] = 0;
      z[m - 1] += g * w;
      z[m + 1] += g * w;
    }
    lat.hi = std::min(lat.hi + 1, top);
  }
  // Odd layer: moves walls at odd m in [1, top-1]; m=1 can annihilate into
  // the m=0 slot, m=top-1 can hop off the right edge into the absorbing slot.
  {
    const int mmax = std::min(lat.hi, top - 1);
    for (int m = 1; m <= mmax; m += 2) {
      const double w = z[m];
      if (w == 0) continue;
      z[m] = 0;
      z[m - 1] += g * w;
      z[m + 1] += g * w;
    }
    lat.hi = std::min(lat.hi + 1, top);
  }
  if (lat.L < 0 && lat.hi >= top)
    throw NumericsError("semi-infinite walk exceeded its time budget");
  renormalize(lat);
}

double walk_total_log(const WalkLattice& lat) {
  double sum = 0;
  for (int m = 0; m <= lat.hi; ++m) sum += lat.z[m];
  return std::log(sum) + lat.log_norm;
}

double survival_probability(const WalkLattice& lat, int x0) {
  require(x0 >= 1, "reference site must be >= 1");
  double tail = 0, total = 0;
  for (int m = 0; m <= lat.hi; ++m) {
    total += lat.z[m];
    if (m >= x0) tail += lat.z[m];
  }
  if (!(total > 0)) throw NumericsError("walk lattice lost all weight");
  return tail / total;
}

double annealed_mi(double P, double q) {
  require(P >= 0.0 && P <= 1.0, "survival probability outside [0,1]");
  require(q >= 2, "on-site dimension q must be >= 2");
  const double num = q * q - q * (q - 1.0) * P;
  const double den = 1.0 + (q - 1.0) * P;
  return std::log(num / den) / std::log(q);
}

void AnnealedConfig::validate() const {
  require(q >= 2, "q must be >= 2");
  require(T >= 0, "T must be >= 0");
  require(prescramble_depth >= 0, "prescramble depth must be >= 0");
  if (L >= 0) require(L >= 2 && L % 2 == 0, "L must be even and >= 2");
  if (finite_rate) {
    require(L >= 2, "finite-rate mode needs a finite lattice");
    finite_rate_sites(L, code_rate);
  } else {
    require(x0 >= 1, "x0 must be in [1, L]");
    if (L >= 0) require(x0 <= L, "x0 must be in [1, L]");
  }
  if (noise == WalkNoise::kRandomTimes)
    require(realizations >= 1, "random-times mode needs realizations >= 1");
}

std::vector<int> finite_rate_sites(int L, double C) {
  require(C > 0.0 && C < 1.0, "code rate must lie in (0,1)");
  const double nr_real = C * L;
  const int nr = int(std::lround(nr_real));
  require(std::abs(nr_real - nr) < 1e-9 && nr >= 1, "C*L must be a positive integer");
  std::vector<int> sites(nr);
  for (int i = 0; i < nr; ++i) sites[i] = int(std::int64_t(i) * L / nr) + 1;
  return sites;
}

WalkLattice run_walk(const AnnealedConfig& cfg, double p,
                     const std::vector<bool>* fire_mask) {
  cfg.validate();
  require(p >= 0.0 && p <= 1.0, "dissipation strength outside [0,1]");
  WalkLattice lat = make_lattice(cfg.q, cfg.L, cfg.T + cfg.prescramble_depth);
  for (int t = 0; t < cfg.T; ++t) {
    if (fire_mask) {
      // Random-times noise: a full-strength event fires on masked steps.
      if ((*fire_mask)[t])
        walk_timestep(lat, true, 1.0);
      else
        walk_timestep(lat, false, 0.0);
    } else {
      walk_timestep(lat, true, p);
    }
  }
  for (int t = 0; t < cfg.prescramble_depth; ++t) walk_timestep(lat, false, 0.0);
  return lat;
}

double annealed_mi_point(const AnnealedConfig& cfg, double p) {
  if (cfg.finite_rate) return finite_rate_mi_point(cfg, p);
  if (cfg.noise == WalkNoise::kDeterministic) {
    const WalkLattice lat = run_walk(cfg, p);
    return annealed_mi(survival_probability(lat, cfg.x0), cfg.q);
  }
  double acc = 0;
  for (int r = 0; r < cfg.realizations; ++r) {
    std::vector<bool> mask(cfg.T);
    Stream s(cfg.seed, r, 0, 0, StreamPurpose::kNoiseMask);
    for (int t = 0; t < cfg.T; ++t) mask[t] = s.next_bernoulli(p);
    const WalkLattice lat = run_walk(cfg, p, &mask);
    acc += annealed_mi(survival_probability(lat, cfg.x0), cfg.q);
  }
  return acc / cfg.realizations;
}

std::vector<std::pair<double, double>> annealed_mi_curve(
    const AnnealedConfig& cfg, const std::vector<double>& p_grid, int threads) {
  cfg.validate();
  std::vector<std::pair<double, double>> out(p_grid.size());
  int nt = threads > 0 ? threads : int(std::thread::hardware_concurrency());
  nt = std::max(1, std::min<int>(nt, int(p_grid.size())));
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  for (int w = 0; w < nt; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= p_grid.size()) return;
        out[i] = {p_grid[i], annealed_mi_point(cfg, p_grid[i])};
      }
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

double finite_rate_mi_from_lattice(const WalkLattice& lat,
                                   const std::vector<int>& bell_sites) {
  require(lat.L >= 2, "finite-rate weighting needs a finite lattice");
  const int L = lat.L;
  const int nr = int(bell_sites.size());
  const double lq = std::log(lat.q);
  // n_ge[m] = #{bell sites >= y(m)}, with slot m=0 meaning y=0 and the
  // absorbing slot m=L meaning y=L+1.
  std::vector<int> n_ge(L + 1, 0);
  for (int m = 0; m <= L; ++m) {
    const int y = (m == L) ? L + 1 : m;
    int c = 0;
    for (const int s : bell_sites) c += (s >= y);
    n_ge[m] = c;
  }
  double log_plus = -HUGE_VAL, log_minus = -HUGE_VAL;
  for (int m = 0; m <= std::min(lat.hi, L); ++m) {
    if (lat.z[m] <= 0) continue;
    const double lz = std::log(lat.z[m]);
    log_plus = log_add(log_plus, lz + n_ge[m] * lq);
    log_minus = log_add(log_minus, lz - n_ge[m] * lq);
  }
  double I = (log_plus - log_minus) / lq;
  return std::clamp(I, 0.0, 2.0 * nr);
}

double finite_rate_mi_point(const AnnealedConfig& cfg, double p) {
  require(cfg.finite_rate, "config is not in finite-rate mode");
  const std::vector<int> sites = finite_rate_sites(cfg.L, cfg.code_rate);
  if (cfg.noise == WalkNoise::kDeterministic) {
    return finite_rate_mi_from_lattice(run_walk(cfg, p), sites);
  }
  double acc = 0;
  for (int r = 0; r < cfg.realizations; ++r) {
    std::vector<bool> mask(cfg.T);
    Stream s(cfg.seed, r, 0, 0, StreamPurpose::kNoiseMask);
    for (int t = 0; t < cfg.T; ++t) mask[t] = s.next_bernoulli(p);
    acc += finite_rate_mi_from_lattice(run_walk(cfg, p, &mask), sites);
  }
  return acc / cfg.realizations;
}

}  // namespace dcl
