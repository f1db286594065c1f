#include <doctest.h>

#include <cmath>

#include "dcl/common.hpp"
#include "dcl/fit.hpp"
#include "dcl/rng.hpp"

using namespace dcl;

namespace {

// Synthetic family on the exact scaling form y = S^(-b) F((p - pc) S^(1/nu)).
std::vector<FitPoint> synthetic_power(double pc, double b, double nu,
                                      double noise, std::uint64_t seed) {
  auto master = [](double x) { return 1.6 / (1.0 + std::exp(1.4 * x)) + 0.2; };
  std::vector<FitPoint> pts;
  Stream s(seed, 0, 0, 0, StreamPurpose::kGeneric);
  int series = 0;
  for (const double size : {64.0, 128.0, 256.0, 512.0, 1024.0}) {
    for (double p = pc - 0.2; p <= pc + 0.2001; p += 0.02) {
      FitPoint pt;
      pt.size = size;
      pt.p = p;
      const double y =
          std::pow(size, -b) * master((p - pc) * std::pow(size, 1.0 / nu));
      const double u1 = std::max(1e-12, s.next_double());
      const double gauss = std::sqrt(-2 * std::log(u1)) *
                           std::cos(6.283185307179586 * s.next_double());
      pt.y = y * (1.0 + noise * gauss);
      pt.err = noise * y;
      pt.series = series;
      pts.push_back(pt);
    }
    ++series;
  }
  return pts;
}

std::vector<FitPoint> synthetic_step(double pd, double omega, double width,
                                     std::uint64_t seed, double noise) {
  std::vector<FitPoint> pts;
  Stream s(seed, 0, 0, 0, StreamPurpose::kGeneric);
  int series = 0;
  for (const double size : {32.0, 64.0, 128.0, 256.0}) {
    for (double p = pd - 0.1; p <= pd + 0.1001; p += 0.01) {
      FitPoint pt;
      pt.size = size;
      pt.p = p;
      const double x = (p - pd) * std::pow(size, omega);
      const double y = 2.0 / (1.0 + std::exp(x / width));
      const double u1 = std::max(1e-12, s.next_double());
      const double gauss = std::sqrt(-2 * std::log(u1)) *
                           std::cos(6.283185307179586 * s.next_double());
      pt.y = y + noise * gauss;
      pt.err = noise;
      pt.series = series;
      pts.push_back(pt);
    }
    ++series;
  }
  return pts;
}

}  // namespace

TEST_CASE("collapse fit recovers known critical parameters from noisy data") {
  const auto pts = synthetic_power(0.5, 0.34, 2.0, 0.01, 17);
  CollapseSpec spec;
  spec.kind = CollapseKind::kPowerLaw;
  spec.pc = {0.3, 0.7, false, 0};
  spec.e1 = {0.2, 1.0, false, 0};
  spec.e2 = {0.05, 0.8, false, 0};
  spec.bootstrap = 40;
  const CollapseFit fit = fit_collapse(pts, spec);
  CHECK(fit.model.pc == doctest::Approx(0.50).epsilon(0.02));
  CHECK(fit.model.e2 == doctest::Approx(0.34).epsilon(0.06));
  CHECK(1.0 / fit.model.e1 == doctest::Approx(2.0).epsilon(0.1));
  CHECK(fit.quality < 5.0);
  CHECK(fit.pc_err < 0.02);
}

TEST_CASE("collapse argmin is invariant under rescaling all y") {
  auto pts = synthetic_power(0.5, 0.34, 2.0, 0.01, 23);
  CollapseSpec spec;
  spec.kind = CollapseKind::kPowerLaw;
  spec.pc = {0.4, 0.6, false, 0};
  spec.e1 = {0.3, 0.8, false, 0};
  spec.e2 = {0.2, 0.5, false, 0};
  const CollapseFit a = fit_collapse(pts, spec);
  for (auto& p : pts) {
    p.y *= 7.5;
    p.err *= 7.5;
  }
  const CollapseFit b = fit_collapse(pts, spec);
  CHECK(a.model.pc == doctest::Approx(b.model.pc).epsilon(1e-9));
  CHECK(a.model.e1 == doctest::Approx(b.model.e1).epsilon(1e-9));
  CHECK(a.model.e2 == doctest::Approx(b.model.e2).epsilon(1e-9));
}

TEST_CASE("step-model fit recovers the step location and omega") {
  const auto pts = synthetic_step(0.136, 0.5, 0.8, 7, 0.01);
  CollapseSpec spec;
  spec.kind = CollapseKind::kStep;
  spec.pc = {0.05, 0.25, false, 0};
  spec.e1 = {0.2, 1.2, false, 0};
  spec.e2 = {0, 0, true, 0};
  const CollapseFit fit = fit_collapse(pts, spec);
  CHECK(fit.model.pc == doctest::Approx(0.136).epsilon(0.05));
  CHECK(fit.model.e1 == doctest::Approx(0.5).epsilon(0.25));
}

TEST_CASE("degenerate collapse input is rejected") {
  std::vector<FitPoint> pts;
  for (double p = 0.1; p < 0.9; p += 0.1)
    pts.push_back({128.0, p, 1.0 - p, 0.01, 0});
  CollapseSpec spec;
  CHECK_THROWS_AS(fit_collapse(pts, spec), NumericsError);
}

TEST_CASE("crossing point of synthetic step families") {
  const auto pts = synthetic_step(0.42, 0.5, 0.6, 11, 0.002);
  const auto est = crossing_point(pts);
  CHECK(est.median == doctest::Approx(0.42).epsilon(0.03));
  CHECK(est.spread < 0.05);
  CHECK(est.pairwise.size() == 6);
}

TEST_CASE("identical curves raise a no-unique-crossing error") {
  std::vector<FitPoint> pts;
  for (int series = 0; series < 2; ++series)
    for (double p = 0.1; p < 0.9; p += 0.1)
      pts.push_back({double(64 << series), p, 1.0 - p, 0.01, series});
  CHECK_THROWS_AS(crossing_point(pts), NumericsError);
}

TEST_CASE("gamma_q spot values") {
  // chi-square tails: P(chi2_1 > 3.841) ~ 0.05, P(chi2_2 > 5.991) ~ 0.05.
  CHECK(gamma_q(0.5, 3.841 / 2) == doctest::Approx(0.05).epsilon(0.01));
  CHECK(gamma_q(1.0, 5.991 / 2) == doctest::Approx(0.05).epsilon(0.01));
  CHECK(gamma_q(0.5, 0.0) == 1.0);
  CHECK(gamma_q(2.5, 30.0) < 1e-8);
}

TEST_CASE("power-law consistency scan finds the decay onset") {
  // Below pc: saturating curves (bad log-log linearity); at/above pc within
  // the window: clean power law.
  std::vector<FitPoint> pts;
  int series = 0;
  for (const double size : {64.0, 128.0, 256.0, 512.0}) {
    for (double p = 0.30; p <= 0.701; p += 0.05) {
      FitPoint pt;
      pt.size = size;
      pt.p = p;
      if (p < 0.5 - 1e-9) {
        pt.y = 1.4 * (0.5 - p) + 1.5 * std::pow(size, -0.34) * std::exp(-(0.5 - p) * 2);
      } else {
        pt.y = 1.5 * std::pow(size, -0.34 - 0.3 * (p - 0.5));
      }
      pt.err = 0.001;
      pt.series = series;
      pts.push_back(pt);
    }
    ++series;
  }
  const auto scan = estimate_pc_power_law(pts, 0.05);
  CHECK(scan.pc == doctest::Approx(0.5).epsilon(0.11));
  CHECK(scan.beta_over_nu == doctest::Approx(0.34).epsilon(0.15));
}
