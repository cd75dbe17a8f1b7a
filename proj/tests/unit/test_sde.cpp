#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "icas/errors.hpp"
#include "icas/rng.hpp"
#include "icas/sde.hpp"

namespace icas {
namespace {

// Unit rates: kappa_C ~ 1 with a short cavity is awkward, so the loss is set by override.
SdeConfig base_config(double kappa) {
  SdeConfig c;
  c.geom.delta1 = 1e-5;
  c.kappa_linear_override = kappa;
  c.dt = 0.002 / kappa;
  c.duration = 5.0 / kappa;
  c.record_stride = 10;
  c.seed = 7;
  return c;
}

TEST(Rng, KeyedStreamsAreReproducibleAndDistinct) {
  KeyedRng a(1, 2, 3), b(1, 2, 3), c(1, 2, 4), d(1, 3, 3), e(2, 2, 3);
  const double va = a.normal();
  EXPECT_EQ(va, b.normal());
  EXPECT_NE(va, c.normal());
  EXPECT_NE(va, d.normal());
  EXPECT_NE(va, e.normal());
  const double u = a.uniform();
  EXPECT_GE(u, 0.0);
  EXPECT_LT(u, 1.0);
}

TEST(Rng, NormalMoments) {
  KeyedRng r(11, 0, 0);
  const int n = 200000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = r.normal();
    s += x;
    s2 += x * x;
  }
  EXPECT_NEAR(s / n, 0.0, 5.0 / std::sqrt(n));
  EXPECT_NEAR(s2 / n, 1.0, 5.0 * std::sqrt(2.0 / n));
}

TEST(Drive, Profiles) {
  EXPECT_EQ(DriveProfile::off().power_at(3.0), 0.0);
  EXPECT_EQ(DriveProfile::constant(2.0).power_at(1e9), 2.0);
  const auto ramp = DriveProfile::linear_ramp(1.0, 3.0, 4.0);
  EXPECT_DOUBLE_EQ(ramp.power_at(0.0), 1.0);
  EXPECT_DOUBLE_EQ(ramp.power_at(2.0), 2.0);
  EXPECT_DOUBLE_EQ(ramp.power_at(10.0), 3.0);
  EXPECT_DOUBLE_EQ(ramp.max_power(), 3.0);
  EXPECT_THROW(DriveProfile::linear_ramp(1.0, 2.0, 0.0).validate(), DomainError);
  EXPECT_THROW(DriveProfile::constant(-1.0).validate(), DomainError);
}

TEST(Integrator, Deterministic) {
  SdeConfig c = base_config(1.0);
  c.medium = gain_medium(1.5, 100.0);
  c.e1_init = 3.0;
  const auto a = integrate(c);
  const auto b = integrate(c);
  ASSERT_EQ(a.t.size(), b.t.size());
  EXPECT_TRUE((a.e1 == b.e1).all());
  EXPECT_TRUE((a.e2 == b.e2).all());
  EXPECT_TRUE((a.intensity == b.intensity).all());
  c.shot = 1;
  const auto other = integrate(c);
  EXPECT_FALSE((a.e1 == other.e1).all());
}

TEST(Integrator, IntensityIsSquaredModulus) {
  SdeConfig c = base_config(1.0);
  c.medium = gain_medium(2.0, 50.0);
  const auto tr = integrate(c);
  EXPECT_TRUE((tr.intensity >= 0.0).all());
  EXPECT_TRUE((tr.intensity == tr.e1.square() + tr.e2.square()).all());
  EXPECT_EQ(tr.t.size(), static_cast<Eigen::Index>(std::llround(c.duration / c.dt)) / c.record_stride + 1);
  EXPECT_EQ(tr.t[0], 0.0);
}

TEST(Integrator, DeterministicDecay) {
  const double kappa = 3.0;
  SdeConfig c = base_config(kappa);
  c.e1_init = 10.0;
  c.e2_init = -4.0;
  const auto tr = integrate(c);
  const double i0 = 116.0;
  for (Eigen::Index k = 0; k < tr.t.size(); ++k) {
    const double exact = i0 * std::exp(-kappa * tr.t[k]);
    // Global Euler error is O(dt) over the run.
    EXPECT_NEAR(tr.intensity[k] / exact, 1.0, kappa * tr.t[k] * kappa * c.dt) << k;
  }
}

TEST(Integrator, DrivenEmptyCavityReachesTransmission) {
  SdeConfig c;
  c.geom.delta1 = 1e-5;
  const double kappa = c.geom.kappa_c();
  c.drive = DriveProfile::constant(1e-3);
  c.dt = 0.001 / kappa;
  c.duration = 30.0 / kappa;
  c.record_stride = 1000;
  FieldIntegrator f(c);
  while (f.t() < c.duration) f.step();
  // Lossless mirrors transmit the full input power in steady state.
  EXPECT_NEAR(f.output_power() / 1e-3, 1.0, 1e-3);
  EXPECT_EQ(f.e2(), 0.0);
}

TEST(Integrator, SaturableRingDownChangesRate) {
  SdeConfig c;
  c.geom.delta1 = 1e-5;
  const double kc = c.geom.kappa_c();
  const double i_sat = 1e6;
  c.medium = saturable_absorber(100.0 * kc, i_sat, 0.0);
  c.e1_init = std::sqrt(1e4 * i_sat);
  c.dt = 0.002 / c.max_rate();
  c.duration = 12.0 / kc;
  FieldIntegrator f(c);
  auto local_rate = [&](double level) {
    while (f.intensity() > level) f.step();
    const double i0 = f.intensity();
    for (int k = 0; k < 50; ++k) f.step();
    return std::log(i0 / f.intensity()) / (50.0 * c.dt);
  };
  const double high = local_rate(5e3 * i_sat);
  const double low = local_rate(1e-3 * i_sat);
  EXPECT_NEAR(high / kc, 1.0 + 100.0 / (1.0 + 5e3), 0.01);
  EXPECT_NEAR(low / (101.0 * kc), 1.0, 0.01);
}

TEST(Integrator, StepSizeValidation) {
  SdeConfig c = base_config(1.0);
  c.dt = 0.02;
  EXPECT_THROW(c.validate(), DomainError);
  EXPECT_THROW(FieldIntegrator{c}, DomainError);
  c = base_config(1.0);
  c.duration = 0.0;
  EXPECT_THROW(c.validate(), DomainError);
  c = base_config(1.0);
  c.record_stride = 0;
  EXPECT_THROW(c.validate(), DomainError);
}

TEST(Integrator, NonFiniteStateReportsStep) {
  SdeConfig c = base_config(1.0);
  c.medium = saturable_absorber(0.5, 1.0);
  c.e1_init = 1e200;
  FieldIntegrator f(c);
  try {
    f.step();
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("step 1"), std::string::npos);
  }
}

// Stationary photon number of a constant-Q empty cavity is 4Q/kappa'; Euler adds
// a relative bias of kappa' dt / 4 that must stay below the Monte Carlo error.
double stationary_mean(double dt, double* se) {
  SdeConfig c = base_config(1.0);
  c.medium.kind = MediumKind::kNone;
  c.medium.q0 = 0.5;
  c.dt = dt;
  FieldIntegrator f(c);
  const int skip = static_cast<int>(std::lround(1.0 / dt));
  std::vector<double> block_means;
  double acc = 0.0;
  int in_block = 0;
  for (int s = 0; s < 5 * skip; ++s) f.step();
  for (int k = 0; k < 40000; ++k) {
    for (int s = 0; s < skip; ++s) f.step();
    acc += f.intensity();
    if (++in_block == 200) {
      block_means.push_back(acc / in_block);
      acc = 0.0;
      in_block = 0;
    }
  }
  const double m = std::accumulate(block_means.begin(), block_means.end(), 0.0) / block_means.size();
  double v = 0.0;
  for (double b : block_means) v += (b - m) * (b - m);
  *se = std::sqrt(v / (block_means.size() - 1) / block_means.size());
  return m;
}

TEST(Integrator, HalvingStepKeepsStationaryMean) {
  double se1 = 0.0, se2 = 0.0;
  const double m1 = stationary_mean(0.005, &se1);
  const double m2 = stationary_mean(0.0025, &se2);
  const double se = std::hypot(se1, se2);
  EXPECT_LT(std::abs(m1 - m2), 3.0 * se);
  EXPECT_NEAR(m1, 2.0, 3.0 * se1 + 2.0 * 0.005 / 4.0);
}

}  // namespace
}  // namespace icas
