#include "dcl/fit.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "dcl/common.hpp"
#include "dcl/rng.hpp"

namespace dcl {

namespace {

struct Scaled {
  double x, y, e;
  int series;
};

std::vector<Scaled> rescale(const std::vector<FitPoint>& pts,
                            const CollapseModel& m) {
  std::vector<Scaled> out;
  out.reserve(pts.size());
  double ymax = 0;
  for (const auto& p : pts) ymax = std::max(ymax, std::abs(p.y));
  const double err_floor = std::max(1e-12, 1e-4 * ymax);
  for (const auto& p : pts) {
    Scaled s;
    s.x = (p.p - m.pc) * std::pow(p.size, m.e1);
    const double yscale =
        (m.kind == CollapseKind::kPowerLaw) ? std::pow(p.size, m.e2) : 1.0;
    s.y = p.y * yscale;
    s.e = std::max(p.err * yscale, err_floor * yscale);
    s.series = p.series;
    out.push_back(s);
  }
  return out;
}

}  // namespace

double collapse_quality(const std::vector<FitPoint>& pts,
                        const CollapseModel& model) {
  const std::vector<Scaled> sc = rescale(pts, model);
  // Per-series sorted views.
  std::map<int, std::vector<const Scaled*>> by_series;
  for (const auto& s : sc) by_series[s.series].push_back(&s);
  if (by_series.size() < 2)
    throw NumericsError("collapse needs at least two size series");
  for (auto& [k, v] : by_series)
    std::sort(v.begin(), v.end(),
              [](const Scaled* a, const Scaled* b) { return a->x < b->x; });

  double q_acc = 0;
  int n_used = 0;
  for (const auto& s : sc) {
    // Bracketing points from every other series.
    double m11 = 0, m12 = 0, m22 = 0, v1 = 0, v2 = 0;
    int got = 0;
    for (const auto& [key, vec] : by_series) {
      if (key == s.series) continue;
      auto it = std::lower_bound(
          vec.begin(), vec.end(), s.x,
          [](const Scaled* a, double x) { return a->x < x; });
      if (it == vec.begin() || it == vec.end()) continue;
      for (const Scaled* nb : {*(it - 1), *it}) {
        const double w = 1.0 / (nb->e * nb->e);
        m11 += w;
        m12 += w * nb->x;
        m22 += w * nb->x * nb->x;
        v1 += w * nb->y;
        v2 += w * nb->x * nb->y;
        ++got;
      }
    }
    if (got < 2) continue;
    const double det = m11 * m22 - m12 * m12;
    if (std::abs(det) < 1e-300) continue;
    const double icept = (m22 * v1 - m12 * v2) / det;
    const double slope = (m11 * v2 - m12 * v1) / det;
    const double yhat = icept + slope * s.x;
    // Variance of the local fit at x.
    const double var_fit =
        (m22 - 2.0 * s.x * m12 + s.x * s.x * m11) / det;
    q_acc += (s.y - yhat) * (s.y - yhat) / (s.e * s.e + var_fit);
    ++n_used;
  }
  if (n_used == 0) throw NumericsError("collapse windows do not overlap");
  return q_acc / n_used;
}

namespace {

CollapseModel minimize_grid(const std::vector<FitPoint>& pts,
                            const CollapseSpec& spec, int levels, int npts,
                            double* q_out) {
  auto clamp_spec = [](const FitParamSpec& s, double v) {
    return std::min(s.hi, std::max(s.lo, v));
  };
  double c_pc = spec.pc.fixed ? spec.pc.value : 0.5 * (spec.pc.lo + spec.pc.hi);
  double c_e1 = spec.e1.fixed ? spec.e1.value : 0.5 * (spec.e1.lo + spec.e1.hi);
  double c_e2 = spec.e2.fixed ? spec.e2.value : 0.5 * (spec.e2.lo + spec.e2.hi);
  double w_pc = 0.5 * (spec.pc.hi - spec.pc.lo);
  double w_e1 = 0.5 * (spec.e1.hi - spec.e1.lo);
  double w_e2 = 0.5 * (spec.e2.hi - spec.e2.lo);
  CollapseModel best;
  best.kind = spec.kind;
  double best_q = HUGE_VAL;
  for (int lev = 0; lev < levels; ++lev) {
    const int n1 = spec.pc.fixed ? 0 : npts;
    const int n2 = spec.e1.fixed ? 0 : npts;
    const int n3 = spec.e2.fixed || spec.kind == CollapseKind::kStep ? 0 : npts;
    CollapseModel m;
    m.kind = spec.kind;
    for (int i = -n1; i <= n1; ++i) {
      m.pc = spec.pc.fixed ? spec.pc.value
                           : clamp_spec(spec.pc, c_pc + w_pc * i / std::max(1, n1));
      for (int j = -n2; j <= n2; ++j) {
        m.e1 = spec.e1.fixed ? spec.e1.value
                             : clamp_spec(spec.e1, c_e1 + w_e1 * j / std::max(1, n2));
        for (int k = -n3; k <= n3; ++k) {
          m.e2 = (spec.e2.fixed || spec.kind == CollapseKind::kStep)
                     ? spec.e2.value
                     : clamp_spec(spec.e2, c_e2 + w_e2 * k / std::max(1, n3));
          const double q = collapse_quality(pts, m);
          if (q < best_q) {
            best_q = q;
            best = m;
          }
        }
      }
    }
    c_pc = best.pc;
    c_e1 = best.e1;
    c_e2 = best.e2;
    w_pc /= npts * 0.75;
    w_e1 /= npts * 0.75;
    w_e2 /= npts * 0.75;
  }
  if (q_out) *q_out = best_q;
  return best;
}

}  // namespace

CollapseFit fit_collapse(const std::vector<FitPoint>& pts,
                         const CollapseSpec& spec) {
  {
    std::map<int, int> counts;
    for (const auto& p : pts) counts[p.series]++;
    if (counts.size() < 2)
      throw NumericsError("fit_collapse: need data from at least two sizes");
  }
  CollapseFit fit;
  fit.model = minimize_grid(pts, spec, 5, 8, &fit.quality);
  if (spec.bootstrap > 0) {
    std::vector<double> pcs, e1s, e2s;
    for (int b = 0; b < spec.bootstrap; ++b) {
      Stream s(spec.seed, std::uint64_t(b), 0, 0, StreamPurpose::kGeneric);
      std::vector<FitPoint> pert = pts;
      for (auto& p : pert) {
        // Box-Muller resample around the mean with the reported error.
        const double u1 = std::max(1e-300, s.next_double());
        const double u2 = s.next_double();
        p.y += p.err * std::sqrt(-2.0 * std::log(u1)) *
               std::cos(6.283185307179586 * u2);
      }
      double q;
      const CollapseModel m = minimize_grid(pert, spec, 3, 6, &q);
      pcs.push_back(m.pc);
      e1s.push_back(m.e1);
      e2s.push_back(m.e2);
    }
    auto sd = [](const std::vector<double>& v) {
      double mean = 0;
      for (const double x : v) mean += x;
      mean /= double(v.size());
      double acc = 0;
      for (const double x : v) acc += (x - mean) * (x - mean);
      return std::sqrt(acc / std::max<std::size_t>(1, v.size() - 1));
    };
    fit.pc_err = sd(pcs);
    fit.e1_err = sd(e1s);
    fit.e2_err = sd(e2s);
  }
  return fit;
}

CrossingEstimate crossing_point(const std::vector<FitPoint>& pts) {
  std::map<int, std::vector<std::pair<double, double>>> curves;
  double yscale = 0;
  for (const auto& p : pts) {
    curves[p.series].emplace_back(p.p, p.y);
    yscale = std::max(yscale, std::abs(p.y));
  }
  if (curves.size() < 2)
    throw NumericsError("crossing_point: need at least two sizes");
  for (auto& [k, c] : curves) std::sort(c.begin(), c.end());

  CrossingEstimate est;
  std::vector<int> keys;
  for (const auto& [k, c] : curves) keys.push_back(k);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    for (std::size_t j = i + 1; j < keys.size(); ++j) {
      const auto& a = curves[keys[i]];
      const auto& b = curves[keys[j]];
      auto interp = [](const std::vector<std::pair<double, double>>& c,
                       double x) {
        auto it = std::lower_bound(c.begin(), c.end(),
                                   std::make_pair(x, -HUGE_VAL));
        if (it == c.begin() || it == c.end()) return HUGE_VAL;
        const auto [x1, y1] = *(it - 1);
        const auto [x2, y2] = *it;
        return y1 + (y2 - y1) * (x - x1) / (x2 - x1);
      };
      const double lo = std::max(a.front().first, b.front().first);
      const double hi = std::min(a.back().first, b.back().first);
      if (!(hi > lo)) continue;
      // Scan the union grid for sign changes of the difference.
      std::vector<double> grid;
      for (const auto& [x, y] : a)
        if (x >= lo && x <= hi) grid.push_back(x);
      for (const auto& [x, y] : b)
        if (x >= lo && x <= hi) grid.push_back(x);
      std::sort(grid.begin(), grid.end());
      grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
      double prev_d = HUGE_VAL, prev_x = 0, max_abs = 0;
      std::vector<double> roots;
      for (const double x : grid) {
        const double d = interp(a, x) - interp(b, x);
        if (d == HUGE_VAL) continue;
        max_abs = std::max(max_abs, std::abs(d));
        if (prev_d != HUGE_VAL && ((d > 0) != (prev_d > 0)) &&
            std::abs(d - prev_d) > 0) {
          roots.push_back(prev_x + (x - prev_x) * prev_d / (prev_d - d));
        }
        prev_d = d;
        prev_x = x;
      }
      if (max_abs < 1e-9 * std::max(1.0, yscale))
        throw NumericsError("crossing_point: curves are identical (no unique crossing)");
      if (roots.size() == 1) est.pairwise.push_back(roots.front());
      if (roots.size() > 1) {
        // Multiple sign changes (noise); take the median root.
        std::sort(roots.begin(), roots.end());
        est.pairwise.push_back(roots[roots.size() / 2]);
      }
    }
  }
  if (est.pairwise.empty())
    throw NumericsError("crossing_point: no intersection in the shared range");
  std::vector<double> v = est.pairwise;
  std::sort(v.begin(), v.end());
  est.median = v[v.size() / 2];
  est.spread = v.back() - v.front();
  return est;
}

double gamma_q(double a, double x) {
  require(a > 0 && x >= 0, "gamma_q domain");
  if (x == 0) return 1.0;
  auto series_p = [&] {
    double sum = 1.0 / a, term = sum, ai = a;
    for (int i = 0; i < 500; ++i) {
      ai += 1;
      term *= x / ai;
      sum += term;
      if (std::abs(term) < std::abs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
  };
  auto contfrac_q = [&] {
    double b = x + 1 - a, c = 1e300, d = 1 / b, h = d;
    for (int i = 1; i < 500; ++i) {
      const double an = -i * (i - a);
      b += 2;
      d = an * d + b;
      if (std::abs(d) < 1e-300) d = 1e-300;
      c = b + an / c;
      if (std::abs(c) < 1e-300) c = 1e-300;
      d = 1 / d;
      const double del = d * c;
      h *= del;
      if (std::abs(del - 1) < 1e-15) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
  };
  return (x < a + 1) ? 1.0 - series_p() : contfrac_q();
}

PowerLawScan estimate_pc_power_law(const std::vector<FitPoint>& pts,
                                   double alpha) {
  // Group by p: each group is an I(T) series across sizes.
  std::map<double, std::vector<const FitPoint*>> by_p;
  for (const auto& pt : pts) by_p[pt.p].push_back(&pt);
  PowerLawScan scan;
  bool found = false;
  for (const auto& [p, grp] : by_p) {
    if (grp.size() < 3) {
      scan.pvalues.push_back(-1);
      continue;
    }
    double m11 = 0, m12 = 0, m22 = 0, v1 = 0, v2 = 0;
    bool usable = true;
    for (const auto* pt : grp) {
      if (!(pt->y > 0) || !(pt->err > 0)) {
        usable = false;
        break;
      }
      const double lx = std::log(pt->size);
      const double ly = std::log(pt->y);
      const double se = pt->err / pt->y;  // error of log y
      const double w = 1.0 / (se * se);
      m11 += w;
      m12 += w * lx;
      m22 += w * lx * lx;
      v1 += w * ly;
      v2 += w * lx * ly;
    }
    if (!usable) {
      scan.pvalues.push_back(0);
      continue;
    }
    const double det = m11 * m22 - m12 * m12;
    const double icept = (m22 * v1 - m12 * v2) / det;
    const double slope = (m11 * v2 - m12 * v1) / det;
    double chi2 = 0;
    for (const auto* pt : grp) {
      const double se = pt->err / pt->y;
      const double r = (std::log(pt->y) - icept - slope * std::log(pt->size)) / se;
      chi2 += r * r;
    }
    const int dof = int(grp.size()) - 2;
    const double pval = gamma_q(0.5 * dof, 0.5 * chi2);
    scan.pvalues.push_back(pval);
    if (!found && pval >= alpha && slope < -0.05) {
      found = true;
      scan.pc = p;
      scan.beta_over_nu = -slope;
      // Slope error from the weighted LS covariance.
      scan.slope_err = std::sqrt(m11 / det);
    }
  }
  if (!found)
    throw NumericsError("estimate_pc_power_law: no p consistent with algebraic decay");
  return scan;
}

}  // namespace dcl
