#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "icas/bistability.hpp"
#include "icas/fokker_planck.hpp"
#include "icas/rng.hpp"
#include "icas/sde.hpp"

namespace icas {

// Linearized Ornstein-Uhlenbeck check above threshold ------------------------

struct OuCheckConfig {
  double a = 20.0;
  double eta0 = 1e4;
  double kappa_prime = 1.0;   // 1/s; sets the time unit
  int runs = 200;
  double burn_in = 5.0;       // in correlation times 1/(2 gamma')
  double sample_time = 50.0;  // in correlation times
  double dt_rate = 0.005;     // dt * max_rate
  int sample_stride = 20;     // steps between samples
  std::uint64_t seed = 1;
  int threads = 1;
};

struct OuCheckResult {
  double mean_field;            // E1_bar = sqrt(I_sat (kappa_G - kappa') / kappa_G)
  double variance_measured;     // <db1^2> about the pooled mean of |E|
  double variance_se;
  double variance_predicted;    // 2Q / (4 gamma')
  double intensity_variance_measured;
  double intensity_variance_se;
  double intensity_variance_predicted;  // 8 I_sat
  double decay_rate_measured;   // from the pooled autocorrelation of b1
  double decay_rate_predicted;  // 2 gamma'
  double validity_metric;       // E1_bar^2 / (2Q/4gamma') = 2 a^2
  double gamma_prime;
  double q;
  int runs;
};

/// Throws DomainError for a <= 0 (no mean field to linearize about).
OuCheckResult linearized_ou_check(const OuCheckConfig& cfg);

// Long-run SDE moments against the Fokker-Planck quadrature ------------------

struct FpComparisonConfig {
  FPParams params;
  int runs = 40;
  double burn_in = 50.0;      // s
  double sample_time = 2000.0;  // s per run
  double dt_rate = 0.005;
  int sample_stride = 10;
  std::uint64_t seed = 1;
  int threads = 1;
};

struct MomentComparison {
  double sde_mean;
  double sde_mean_se;
  double sde_variance;
  double sde_variance_se;
  double fp_mean;
  double fp_variance;

  double mean_z() const { return (sde_mean - fp_mean) / sde_mean_se; }
  double variance_z() const { return (sde_variance - fp_variance) / sde_variance_se; }
};

/// Standard errors come from the spread of per-run estimates.
MomentComparison compare_with_fokker_planck(const FpComparisonConfig& cfg);

// Sweep-up with two saturable-absorber cavities -------------------------------

struct SweepUpConfig {
  AbsorberCavity cavity;        // reference cavity
  double delta_alpha = 1e-6;    // 1/m added in the second cavity
  double q0 = -1.0;             // negative selects 2 kappa_L
  double ramp_time = 0.0;       // s; zero selects 100 / kappa_C
  double ramp_low = 0.8;        // start at ramp_low * P0(I_plus)
  double ramp_high = 1.2;       // stop at ramp_high * P0(I_minus) of the second cavity
  double dt_rate = 0.005;
  int shots = 100;
  std::uint64_t seed = 1;
  int threads = 1;
  int trace_stride = 0;         // > 0 records shot 0 every trace_stride steps
};

struct SweepShot {
  std::optional<double> switch_clean;  // s
  std::optional<double> switch_doped;
  int sign = 0;           // sign of the doped-minus-clean output blip
  double estimate = 0.0;  // delta alpha, 1/m
  bool flagged = false;   // a cavity never switched
};

struct SweepUpResult {
  std::vector<SweepShot> shots;
  int flagged = 0;
  int positive = 0;
  int negative = 0;
  int zero = 0;
  double p0_start = 0.0;
  double p0_stop = 0.0;
  double ramp_rate = 0.0;        // W/s
  double jump_clean = 0.0;       // W
  double jump_doped = 0.0;
  double jump_slope = 0.0;       // dP0_jump / d alpha, W m
  double threshold_clean = 0.0;  // photons
  double threshold_doped = 0.0;
  double dt = 0.0;
  Eigen::ArrayXd trace_t;
  Eigen::ArrayXd trace_clean;    // output power, W
  Eigen::ArrayXd trace_doped;
};

SweepUpResult sweep_up_experiment(const SweepUpConfig& cfg);

// Saturable ring-down versus CRDS ---------------------------------------------

/// Deterministic time for dI/dt = -(kappa' + kappa_L/(1+I/I_sat)) I to fall from i_init to i_ref.
double saturable_crossing_time(double kappa_prime, double kappa_l, double i_sat, double i_init, double i_ref);

/// Inverse of saturable_crossing_time in kappa'. Throws NumericalError when t is out of range.
double invert_crossing_time(double t, double kappa_l, double i_sat, double i_init, double i_ref);

/// Single-exponential timing inversion ln(I_init/I_ref)/(c t) - kappa_C/c, 1/m.
double single_exponential_estimate(double t, double i_init, double i_ref, double kappa_c);

/// First time the sampled record drops to `level`, linearly interpolated in ln P
/// between the bracketing samples. Nullopt when it never does.
std::optional<double> first_crossing(const Eigen::ArrayXd& t, const Eigen::ArrayXd& record, double level);

/// Least-squares slope of ln(record) over [0, fit_window], truncated at the first
/// non-positive sample; returns (-slope - kappa_c) / c in 1/m.
double crds_fit_estimator(const Eigen::ArrayXd& t, const Eigen::ArrayXd& record, double fit_window, double kappa_c);

/// Multiply by exp(g t) and add detection shot noise of variance hbar omega P / tau when tau > 0.
Eigen::ArrayXd distort_record(const Eigen::ArrayXd& t, const Eigen::ArrayXd& power, double g, double tau,
                              double photon_energy, KeyedRng* rng);

struct RingdownConfig {
  AbsorberCavity cavity;     // kappa_L, I_sat and the true alpha_S
  double q0 = -1.0;          // negative selects 2 kappa_L
  double i_init = 0.0;       // photons
  double threshold = 0.0;    // photons; zero selects I_sat / 10
  double reference = 0.0;    // photons used in the inversion; zero selects the threshold
  double dt_rate = 0.01;
  int record_stride = 10;
  double duration = 0.0;     // s; zero picks 1.5 T + 20 / (kappa_C + kappa_L)
  bool shot_noise = true;
  double crds_window = 0.0;  // s; zero selects 5 / kappa_C
  int shots = 200;
  std::uint64_t seed = 1;
  int threads = 1;
  std::vector<double> g_drift_var{0.0};  // <g'^2> values, (1/s)^2
};

struct RingdownShot {
  std::optional<double> switch_time;  // distorted crossing time, s
  double timing_estimate = 0.0;       // 1/m
  double crds_estimate = 0.0;         // 1/m
  double g = 0.0;                     // applied drift, 1/s
  bool flagged = false;
};

struct EstimatorRow {
  double g_drift_var;
  double timing_rms;   // 1/m
  double timing_bias;
  double crds_rms;
  double crds_bias;
  int flagged;
};

struct RingdownResult {
  double alpha_true;          // 1/m
  double threshold;
  double reference;
  double dt;
  double duration;
  double timing_offset;       // s, integrator bias removed from crossing times
  double crds_kappa_eff;      // 1/s, fitted decay of the noise-free empty trace
  double bad_times_level;     // kappa_C / (c sqrt(I_sat)), 1/m
  std::vector<EstimatorRow> table;
  std::vector<std::vector<RingdownShot>> shots;  // [g index][shot]
  std::optional<double> crossover_g_var;  // first <g'^2> where timing beats CRDS
  Eigen::ArrayXd example_t;               // shot 0, first <g'^2>
  Eigen::ArrayXd example_intensity;
  Eigen::ArrayXd example_record;
};

/// Per-shot trajectories are simulated once and reused for every <g'^2> value,
/// with g' = z sqrt(<g'^2>) and z drawn once per shot.
RingdownResult estimator_comparison(const RingdownConfig& cfg);

/// Single-noise-level form: shots for the first <g'^2> of cfg only.
std::vector<RingdownShot> ringdown_experiment(const RingdownConfig& cfg);

}  // namespace icas
