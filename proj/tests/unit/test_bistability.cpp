#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "icas/bistability.hpp"
#include "icas/errors.hpp"

namespace icas {
namespace {

constexpr double kC = 299792458.0;

AbsorberCavity absorber(double ratio, double alpha_s = 0.0) {
  AbsorberCavity cav;
  cav.geom.delta1 = 1e-5;
  cav.i_sat = photons_from_wcm2(1.0, cav.geom);
  cav.kappa_l = ratio * cav.geom.kappa_c();
  cav.alpha_s = alpha_s;
  return cav;
}

// Residual of I (kappa' + kappa_L / (1 + I/I_sat))^2 = P0 kappa_C / hbar omega, written out directly.
double relative_residual(double intensity, double p0, const AbsorberCavity& cav) {
  const double rate = cav.geom.kappa_c() + kC * cav.alpha_s + cav.kappa_l / (1.0 + intensity / cav.i_sat);
  const double lhs = intensity * rate * rate;
  const double rhs = p0 / cav.geom.photon_energy() * cav.geom.kappa_c();
  return std::abs(lhs - rhs) / rhs;
}

std::size_t max_root_count(const AbsorberCavity& cav, double p0_hi, int n) {
  std::size_t most = 0;
  for (int i = 1; i <= n; ++i) most = std::max(most, steady_intensities(p0_hi * i / n, cav).size());
  return most;
}

TEST(SaturatedLoss, Limits) {
  EXPECT_DOUBLE_EQ(saturated_loss(0.0, 5.0, 2.0), 5.0);
  EXPECT_DOUBLE_EQ(saturated_loss(2.0, 5.0, 2.0), 2.5);
  EXPECT_EQ(saturated_loss(std::numeric_limits<double>::infinity(), 5.0, 2.0), 0.0);
  EXPECT_LE(saturated_loss(1e300, 5.0, 2.0), 1e-299);
  EXPECT_THROW(saturated_loss(-1.0, 5.0, 2.0), DomainError);
}

TEST(SteadyState, LinearCavityWithoutAbsorber) {
  const auto cav = absorber(0.0, 3e-6);
  const double kp = cav.geom.kappa_c() + kC * cav.alpha_s;
  const double p0 = 1e-3;
  const auto roots = steady_intensities(p0, cav);
  ASSERT_EQ(roots.size(), 1u);
  const double want = p0 * cav.geom.kappa_c() / (cav.geom.photon_energy() * kp * kp);
  EXPECT_NEAR(roots[0].intensity / want, 1.0, 1e-12);
  EXPECT_TRUE(roots[0].stable);
  EXPECT_EQ(steady_intensities(0.0, cav).front().intensity, 0.0);
}

TEST(SteadyState, ThreeRootsInsideWindow) {
  const auto cav = absorber(12.0);
  const auto tp = turning_points(cav);
  ASSERT_TRUE(tp.has_value());
  EXPECT_NEAR(tp->i_plus / cav.i_sat, (10.0 + std::sqrt(48.0)) / 2.0, 1e-12);
  EXPECT_NEAR(tp->i_minus / cav.i_sat, (10.0 - std::sqrt(48.0)) / 2.0, 1e-12);
  EXPECT_LT(tp->p0_plus, tp->p0_minus);
  for (double f : {0.01, 0.3, 0.5, 0.9, 0.99}) {
    const double p0 = tp->p0_plus + f * (tp->p0_minus - tp->p0_plus);
    const auto roots = steady_intensities(p0, cav);
    ASSERT_EQ(roots.size(), 3u) << f;
    EXPECT_TRUE(roots[0].stable);
    EXPECT_FALSE(roots[1].stable);
    EXPECT_TRUE(roots[2].stable);
    EXPECT_LT(roots[0].intensity, tp->i_minus);
    EXPECT_GT(roots[1].intensity, tp->i_minus);
    EXPECT_LT(roots[1].intensity, tp->i_plus);
    EXPECT_GT(roots[2].intensity, tp->i_plus);
    for (const auto& r : roots) EXPECT_LT(relative_residual(r.intensity, p0, cav), 1e-10);
  }
  EXPECT_EQ(steady_intensities(0.5 * tp->p0_plus, cav).size(), 1u);
  EXPECT_EQ(steady_intensities(2.0 * tp->p0_minus, cav).size(), 1u);
}

TEST(SteadyState, ResidualsAcrossWideRange) {
  for (double ratio : {0.0, 3.0, 8.0, 8.08, 12.0, 100.0}) {
    const auto cav = absorber(ratio, 1e-6);
    for (double e = -12.0; e <= 2.0; e += 0.25) {
      const double p0 = std::pow(10.0, e);
      for (const auto& r : steady_intensities(p0, cav)) {
        EXPECT_LT(relative_residual(r.intensity, p0, cav), 1e-10) << ratio << " " << p0;
      }
    }
  }
}

TEST(TurningPoints, SlopeVanishes) {
  for (double ratio : {8.08, 12.0, 100.0}) {
    const auto cav = absorber(ratio, 2e-9);
    const auto tp = turning_points(cav);
    ASSERT_TRUE(tp.has_value());
    for (double i : {tp->i_plus, tp->i_minus}) {
      const double p = cav.input_power(i);
      EXPECT_LT(std::abs(cav.input_power_slope(i)) * i / p, 1e-9) << ratio;
      // Finite differences of the input-output relation change sign across the turning point.
      const double h = 1e-3 * i;
      const double left = cav.input_power(i) - cav.input_power(i - h);
      const double right = cav.input_power(i + h) - cav.input_power(i);
      EXPECT_LT(left * right, 0.0) << ratio;
    }
    EXPECT_NEAR(cav.input_power(tp->i_plus), tp->p0_plus, 1e-15 * tp->p0_plus);
  }
}

TEST(TurningPoints, AnalyticSlopeMatchesFiniteDifference) {
  const auto cav = absorber(12.0, 1e-6);
  for (double u : {0.1, 1.0, 2.5, 7.0, 40.0}) {
    const double i = u * cav.i_sat, h = 1e-5 * i;
    const double fd = (cav.input_power(i + h) - cav.input_power(i - h)) / (2.0 * h);
    EXPECT_NEAR(cav.input_power_slope(i), fd, 1e-6 * std::abs(cav.input_power(i) / i)) << u;
  }
}

TEST(TurningPoints, DegenerateAtCriticalAbsorption) {
  const auto cav = absorber(8.0);
  const auto tp = turning_points(cav);
  ASSERT_TRUE(tp.has_value());
  EXPECT_NEAR(tp->i_plus / cav.i_sat, 3.0, 1e-12);
  EXPECT_NEAR(tp->i_minus / cav.i_sat, 3.0, 1e-12);
  EXPECT_FALSE(jump_up_power(cav).has_value());
}

TEST(TurningPoints, SmallXApproximation) {
  const auto cav = absorber(8.08);
  const auto tp = turning_points(cav);
  ASSERT_TRUE(tp.has_value());
  EXPECT_NEAR(tp->x, 0.1, 1e-12);
  EXPECT_NEAR(tp->i_plus / cav.i_sat, (6.08 + std::sqrt(0.6464)) / 2.0, 1e-12);
  EXPECT_NEAR(tp->i_minus / cav.i_sat, (6.08 - std::sqrt(0.6464)) / 2.0, 1e-12);
  EXPECT_NEAR(tp->approx_plus / cav.i_sat, 3.4, 1e-12);
  EXPECT_NEAR(tp->approx_minus / cav.i_sat, 2.6, 1e-12);
  const double x2 = tp->x * tp->x;
  EXPECT_LT(std::abs(tp->i_plus - tp->approx_plus) / cav.i_sat, 5.0 * x2);
  EXPECT_LT(std::abs(tp->i_minus - tp->approx_minus) / cav.i_sat, 5.0 * x2);
  // Halving x cuts the error by about four.
  AbsorberCavity half = cav;
  half.kappa_l = 8.0 * (1.0 + 0.0025) * cav.geom.kappa_c();
  const auto th = turning_points(half);
  const double ratio = (tp->i_plus - tp->approx_plus) / (th->i_plus - th->approx_plus);
  EXPECT_NEAR(ratio, 4.0, 0.3);
}

TEST(TurningPoints, BranchCountTransitionsAtEight) {
  for (int k = 0; k <= 40; ++k) {
    const double ratio = (60.0 + k) / 10.0;
    const auto cav = absorber(ratio);
    const auto tp = turning_points(cav);
    const double p0_hi = 2.0 * cav.input_power(20.0 * cav.i_sat);
    if (k > 20) {
      ASSERT_TRUE(tp.has_value()) << ratio;
      const double mid = 0.5 * (tp->p0_plus + tp->p0_minus);
      EXPECT_EQ(steady_intensities(mid, cav).size(), 3u) << ratio;
    } else if (k < 20) {
      EXPECT_FALSE(tp.has_value()) << ratio;
      EXPECT_EQ(max_root_count(cav, p0_hi, 400), 1u) << ratio;
    }
  }
}

TEST(TurningPoints, TraceAbsorptionRaisesThreshold) {
  // kappa_L = 8.5 kappa_C is bistable when clean but not once c alpha_S exceeds kappa_L/8 - kappa_C.
  const auto clean = absorber(8.5);
  const double alpha = 0.1 * clean.geom.kappa_c() / kC;
  EXPECT_TRUE(turning_points(clean).has_value());
  EXPECT_FALSE(turning_points(absorber(8.5, alpha)).has_value());
}

TEST(TurningPoints, SingleRootAtSevenKappa) {
  const auto cav = absorber(7.0);
  EXPECT_FALSE(turning_points(cav).has_value());
  EXPECT_EQ(max_root_count(cav, 2.0 * cav.input_power(50.0 * cav.i_sat), 2000), 1u);
}

TEST(JumpUp, MonotoneInAbsorption) {
  double prev = *jump_up_power(absorber(12.0));
  for (double e = -9.0; e <= -6.0; e += 0.25) {
    const double p = *jump_up_power(absorber(12.0, std::pow(10.0, e)));
    EXPECT_GT(p, prev) << e;
    prev = p;
  }
}

TEST(JumpUp, DopedCavitySwitchesLater) {
  const auto clean = absorber(12.0);
  const auto doped = absorber(12.0, per_cm_to_per_m(1e-8));
  EXPECT_GT(*jump_up_power(doped), *jump_up_power(clean));
}

TEST(Hysteresis, SweepFollowsBranches) {
  const auto cav = absorber(12.0);
  const auto tp = *turning_points(cav);
  const Eigen::ArrayXd grid = Eigen::ArrayXd::LinSpaced(801, 0.8 * tp.p0_plus, 1.2 * tp.p0_minus);
  const auto c = hysteresis_sweep(grid, cav);
  ASSERT_TRUE(c.jump_up_index.has_value());
  ASSERT_TRUE(c.jump_down_index.has_value());
  EXPECT_GT(grid[*c.jump_up_index], tp.p0_minus);
  EXPECT_LE(grid[*c.jump_up_index - 1], tp.p0_minus);
  EXPECT_LT(grid[*c.jump_down_index], tp.p0_plus);
  EXPECT_GE(grid[*c.jump_down_index + 1], tp.p0_plus);
  EXPECT_NEAR(c.x_param, std::sqrt(12.0 / 8.0 - 1.0), 1e-12);
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const bool inside = grid[i] >= tp.p0_plus && grid[i] <= tp.p0_minus;
    if (!inside) {
      EXPECT_EQ(c.up[i], c.down[i]) << i;
    } else {
      EXPECT_LT(c.up[i], tp.i_minus * (1.0 + 1e-9));
      EXPECT_GT(c.down[i], tp.i_plus * (1.0 - 1e-9));
    }
  }
}

TEST(Hysteresis, NoJumpsWithoutBistability) {
  const auto cav = absorber(6.0);
  const Eigen::ArrayXd grid = Eigen::ArrayXd::LinSpaced(50, 0.0, 1e-3);
  const auto c = hysteresis_sweep(grid, cav);
  EXPECT_FALSE(c.jump_up_index.has_value());
  EXPECT_FALSE(c.jump_down_index.has_value());
  EXPECT_TRUE(std::isnan(c.x_param));
  EXPECT_TRUE((c.up == c.down).all());
}

TEST(Hysteresis, RejectsUnorderedGrid) {
  Eigen::ArrayXd grid(3);
  grid << 1.0, 2.0, 2.0;
  EXPECT_THROW(hysteresis_sweep(grid, absorber(12.0)), DomainError);
}

}  // namespace
}  // namespace icas
