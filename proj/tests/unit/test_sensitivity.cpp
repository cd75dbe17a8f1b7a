#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "icas/errors.hpp"
#include "icas/sensitivity.hpp"

namespace icas {
namespace {

constexpr double kC = 299792458.0;

Eigen::ArrayXd log_grid(double lo, double hi, int n) {
  return Eigen::ArrayXd::LinSpaced(n, std::log10(lo), std::log10(hi)).unaryExpr([](double e) {
    return std::pow(10.0, e);
  });
}

// Reference comparison: empty mirrors 1e-5, gain mirrors 1e-4, eta0 = 1e6, 10 kW/cm^2 mirror limit.
CompareConfig reference_config(double v_t) {
  CompareConfig cfg;
  cfg.cavity.delta1 = 1e-5;
  cfg.delta1_gain = 1e-4;
  cfg.eta0 = 1e6;
  cfg.mirror_limit_wcm2 = 1e4;
  cfg.v_t = v_t;
  cfg.t_star = 1.0;
  cfg.t_grid = log_grid(1e-6, 1e3, 91);
  cfg.v_t_sweep = log_grid(1e-16, 1e-2, 57);
  return cfg;
}

TEST(GainCurve, PlateauAndFloor) {
  const double g = 50.0, k = 3e4, is = 2e11, v = 1e-9;
  Eigen::ArrayXd t(2);
  t << 0.0, 1e15;
  const auto c = gain_sensitivity_curve(g, k, is, v, t);
  EXPECT_NEAR(c.dalpha2[0] / (4.0 * g * g / (kC * kC) * (2.0 * k * k / (is * g * g) + v)), 1.0, 1e-14);
  EXPECT_NEAR(c.floor_level() / (4.0 * g * g / (kC * kC) * v), 1.0, 1e-14);
  EXPECT_NEAR(c.dalpha2[1] / c.floor_level(), 1.0, 1e-6);
  EXPECT_NEAR(c.meta.intensity, 2.0 * is * g / k, 1e-3);
  EXPECT_TRUE(c.meta.warning.empty());
}

TEST(GainCurve, ValidityWarningsAndErrors) {
  Eigen::ArrayXd t(1);
  t << 1.0;
  EXPECT_FALSE(gain_sensitivity_curve(1.0, 1e4, 1e4, 0.0, t).meta.warning.empty());
  EXPECT_THROW(gain_sensitivity_curve(0.0, 1e4, 1e4, 0.0, t), DomainError);
  EXPECT_THROW(gain_sensitivity_curve(2e4, 1e4, 1e4, 0.0, t), DomainError);
}

TEST(GainCurve, MonotoneAndPositive) {
  const Eigen::ArrayXd t = log_grid(1e-6, 1e4, 300);
  for (const auto& c : {gain_sensitivity_curve(30.0, 3e4, 2e11, 1e-9, t),
                        driven_gain_sensitivity_curve(300.0, 3e4, 2e11, 1e-9, t),
                        empty_sensitivity_curve(3e3, 5.6e12, 1e-9, t)}) {
    EXPECT_TRUE((c.dalpha2 > 0.0).all());
    for (Eigen::Index i = 1; i < t.size(); ++i) EXPECT_LE(c.dalpha2[i], c.dalpha2[i - 1]);
    EXPECT_TRUE((c.dalpha2 >= c.floor_level()).all());
  }
}

TEST(DrivenCurve, RelationToUndriven) {
  const double g = 400.0, k = 3e4, is = 2e11;
  Eigen::ArrayXd t(3);
  t << 0.0, 1e-2, 1e12;
  const auto u = gain_sensitivity_curve(g, k, is, 0.0, t);
  const auto d = driven_gain_sensitivity_curve(g, k, is, 0.0, t);
  // Printed prefactors: 4 x 2 versus 1 x 4, so the plateaus differ by exactly 2.
  EXPECT_NEAR(u.dalpha2[0] / d.dalpha2[0], 2.0, 1e-12);
  // Denominators 1 + g t versus 1 + g t / 2.
  EXPECT_NEAR(u.dalpha2[1] / d.dalpha2[1], 2.0 * (1.0 + g * t[1] / 2.0) / (1.0 + g * t[1]), 1e-12);
  // Long-time tails both fall as 1/(I_sat t), here with equal coefficients.
  EXPECT_NEAR(u.dalpha2[2] / d.dalpha2[2], 1.0, 1e-9);
  EXPECT_NEAR(u.dalpha2[2] * is * t[2] / (8.0 * k * k / (kC * kC * g)), 1.0, 1e-9);
  EXPECT_DOUBLE_EQ(d.meta.gamma, g / 2.0);
}

TEST(DrivenCurve, DriveAtSaturationBound) {
  const double k = 3e4, is = 2e11;
  const double g = k / std::sqrt(is);
  Eigen::ArrayXd t(1);
  t << 1.0;
  const auto d = driven_gain_sensitivity_curve(g, k, is, 0.0, t);
  EXPECT_NEAR(d.meta.drive * d.meta.drive, 2.0 * is * g * g * g / k, 1e-9 * d.meta.drive * d.meta.drive);
  EXPECT_NEAR(d.meta.intensity / std::sqrt(is), 2.0, 1e-9);
  EXPECT_FALSE(d.meta.warning.empty());
  EXPECT_THROW(driven_gain_sensitivity_curve(0.5 * g, k, is, 0.0, t), DomainError);
  EXPECT_THROW(driven_gain_sensitivity_curve(2.0 * k, k, is, 0.0, t), DomainError);
}

TEST(Curves, FloorScalesWithTechnicalVariance) {
  const Eigen::ArrayXd t = log_grid(1e-3, 1e3, 10);
  const double s = 7.0;
  EXPECT_NEAR(gain_sensitivity_curve(30.0, 3e4, 2e11, s * s * 1e-10, t).floor_level() /
                  gain_sensitivity_curve(30.0, 3e4, 2e11, 1e-10, t).floor_level(),
              s * s, 1e-12);
  EXPECT_NEAR(empty_sensitivity_curve(3e3, 1e12, s * s * 1e-10, t).floor_level() /
                  empty_sensitivity_curve(3e3, 1e12, 1e-10, t).floor_level(),
              s * s, 1e-12);
}

TEST(Curves, FluctuationExceedsShotNoiseOnFeasibleDomain) {
  const double k = 3e4, is = 2e11;
  for (double g : log_grid(5.0 * k / std::sqrt(is), k, 200)) {
    EXPECT_GT(2.0 * k * k / (is * g * g), k / (2.0 * is * g));
  }
}

TEST(Optimizer, MatchesBruteForceScan) {
  const double k = 29979.2458, is = 1.9634954e11, im = 5.6e12;
  for (double v : {1e-14, 1e-11, 1e-9, 1e-6, 1e-3}) {
    const auto op = optimize_operating_point(1.0, v, k, is, im);
    double best = std::numeric_limits<double>::infinity();
    for (double g : log_grid(op.gamma_lower, op.gamma_upper, 10000)) best = std::min(best, gain_dalpha2(g, k, is, v, 1.0));
    EXPECT_NEAR(op.dalpha2_at_t / best, 1.0, 1e-3) << v;
    EXPECT_LE(op.dalpha2_at_t, best * (1.0 + 1e-6)) << v;
    EXPECT_GE(op.gamma_prime, 5.0 * k / std::sqrt(is) * (1.0 - 1e-12));
    EXPECT_LE(op.gamma_prime, k);
    EXPECT_LE(op.intensity, im * (1.0 + 1e-12));
  }
}

TEST(Optimizer, OptimalGammaFallsWithTechnicalNoise) {
  const double k = 29979.2458, is = 1.9634954e11, im = 5.6e12;
  double prev = std::numeric_limits<double>::infinity();
  bool saw_interior = false, saw_clamp = false;
  for (double v : log_grid(1e-16, 1e-2, 57)) {
    const auto op = optimize_operating_point(1.0, v, k, is, im);
    EXPECT_LE(op.gamma_prime, prev * (1.0 + 1e-9)) << v;
    prev = op.gamma_prime;
    saw_interior |= op.clamped == Clamp::kInterior;
    saw_clamp |= op.clamped != Clamp::kInterior;
    if (op.clamped == Clamp::kInterior) {
      EXPECT_GT(op.intensity, std::sqrt(is));
      // gamma' <= kappa'_G caps the photon number at 2 I_sat.
      EXPECT_LT(op.intensity, 2.0 * is);
    }
  }
  EXPECT_TRUE(saw_interior);
  EXPECT_TRUE(saw_clamp);
}

TEST(Optimizer, EmptyIntervalIsConfigError) {
  EXPECT_THROW(optimize_operating_point(1.0, 1e-9, 1e4, 16.0, 1e12), ConfigError);
  EXPECT_THROW(optimize_operating_point(0.0, 1e-9, 1e4, 1e10, 1e12), DomainError);
}

TEST(Optimizer, MirrorLimitClamp) {
  const double k = 3e4, is = 1e10;
  // Mirror limit below the pump-ceiling photon number forces the clamp at v_T = 0.
  const auto op = optimize_operating_point(1.0, 0.0, k, is, 1e8);
  EXPECT_EQ(op.clamped, Clamp::kMirrorLimit);
  EXPECT_NEAR(op.intensity / 1e8, 1.0, 1e-12);
}

TEST(Crossover, Formulas) {
  const double kg = 3e4, ke = 3e3, is = 2e11, ie = 5.6e12, g = 100.0, v = 1e-9;
  const auto x = crossover_analysis(kg, ke, is, ie, g, v, 1.0);
  EXPECT_NEAR(x.chi_max, 16.0 * ke * ke / (g * g), 1e-9);
  // The quoted chi bound is not the ratio of the two quoted times, which is its
  // reciprocal up to 16^2: t_G / t_c = kappa_E'^2 / (16 gamma'^2).
  EXPECT_NEAR(x.t_g / x.t_c, ke * ke / (16.0 * g * g), 1e-9 * x.t_g / x.t_c);
  EXPECT_NEAR(x.t_c, 32.0 * kg * kg / (ke * ke * is * g * v), 1e-9 * x.t_c);
  // t_c equates the intermediate gain term with the empty floor.
  EXPECT_NEAR(8.0 * kg * kg / (kC * kC * is * g * x.t_c), ke * ke / (4.0 * kC * kC) * v, 1e-9 * ke * ke * v / (kC * kC));
  EXPECT_NEAR(x.t_e, 2.0 / (ie * v * ke), 1e-25);
  EXPECT_NEAR(x.v_t_critical, 32.0 * kg * kg / (ke * ke * is * g), 1e-20);
  // Ratio of the long-time floors of the two curves.
  EXPECT_NEAR(gain_dalpha2(g, kg, is, v, 1e30) / empty_dalpha2(ke, ie, v, 1e30), x.long_time_ratio,
              1e-6 * x.long_time_ratio);
  EXPECT_THROW(crossover_analysis(kg, ke, is, ie, g, 0.0), DomainError);
}

TEST(Crossover, EqualPhotonLongTimeRatio) {
  // With v_T = 0, equal rates and equal photon numbers, the printed forms give a
  // fixed ratio of 64 between the 1/t tails, independent of I and t.
  const double k = 3e3, is = 2e11, g = 200.0;
  const double photons = 2.0 * is * g / k;
  for (double t : {1e8, 1e10}) {
    EXPECT_NEAR(gain_dalpha2(g, k, is, 0.0, t) / empty_dalpha2(k, photons, 0.0, t), 64.0, 1e-4);
  }
}

TEST(Compare, GainWinsBeforeOneSecondAtReferenceParameters) {
  const auto r = compare_cases(reference_config(1e-9));
  ASSERT_TRUE(r.intersection_time.has_value());
  EXPECT_LT(*r.intersection_time, 1.0);
  EXPECT_LT(r.gain.dalpha2[r.gain.dalpha2.size() - 1], r.empty.dalpha2[r.empty.dalpha2.size() - 1]);
  const double ratio = *r.intersection_time / r.crossover.t_c;
  EXPECT_GT(ratio, 0.5);
  EXPECT_LT(ratio, 2.0);
}

TEST(Compare, CriticalTechnicalNoiseSeparatesRegimes) {
  const auto r = compare_cases(reference_config(1e-9));
  ASSERT_TRUE(r.v_t_critical.has_value());
  int below = 0, above = 0;
  for (const auto& row : r.sweep) {
    if (row.v_t < *r.v_t_critical / 1.01) {
      EXPECT_LT(row.dalpha2_empty, row.dalpha2_gain) << row.v_t;
      ++below;
    } else if (row.v_t > *r.v_t_critical * 1.01) {
      EXPECT_LT(row.dalpha2_gain, row.dalpha2_empty) << row.v_t;
      ++above;
    }
  }
  EXPECT_GT(below, 0);
  EXPECT_GT(above, 0);
}

TEST(Compare, NoCrossoverWithoutTechnicalNoise) {
  auto cfg = reference_config(0.0);
  const auto r = compare_cases(cfg);
  EXPECT_FALSE(r.intersection_time.has_value());
  EXPECT_FALSE(curve_intersection_time(r.optimum.gamma_prime, r.kappa_g_prime, r.i_sat, r.kappa_e_prime,
                                       r.i_empty, 0.0, 1e-6, 1e3)
                   .has_value());
}

TEST(Compare, DetunedCurvesBracketOptimum) {
  const auto r = compare_cases(reference_config(1e-9));
  EXPECT_NEAR(r.gain_low.meta.rate * 3.0 / r.optimum.gamma_prime, 1.0, 1e-12);
  EXPECT_LE(r.gain_high.meta.rate, r.kappa_g_prime);
}

}  // namespace
}  // namespace icas
