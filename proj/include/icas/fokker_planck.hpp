#pragma once

#include <cmath>
#include <concepts>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace icas {

/// Parameters of the constant-Q steady state of the driven saturable-gain field.
struct FPParams {
  double drive = 0.0;        // E0~, sqrt(photons)/s
  double kappa_prime = 1.0;  // kappa_C + c alpha_S, 1/s
  double kappa_g = 0.0;      // 1/s
  double i_sat = 1.0;        // photons
  double q = 1.0;            // spontaneous-emission coefficient, 1/s

  void validate() const;
};

/// Near-threshold (below saturation) notation.
struct ThresholdParams {
  double a;            // pump parameter gamma' / sqrt(beta' q')
  double eta0;         // (4/sqrt(pi)) sqrt(I_sat)
  double gamma_prime;  // (kappa_G - kappa') / 2
  double beta_prime;   // kappa_G / (2 I_sat)
  double q_prime;      // Q

  /// Photon-number scale sqrt(q'/beta'); I = I~ * intensity_scale().
  double intensity_scale() const { return std::sqrt(q_prime / beta_prime); }
};

ThresholdParams threshold_params(const FPParams& p);

/// Drive-free parameters at pump parameter `a` for a fully inverted medium (Q = 2 kappa_G).
FPParams drive_free_at_pump(double a, double kappa_prime, double i_sat);

/// ln I_MB0(x) with I_MB0(x) = (2/pi) * integral_0^{2pi} exp(x cos phi) dphi = 4 I_0(x).
/// Power series for x <= 30, large-argument expansion above.
double log_bessel_mb0(double x);

/// Power-series branch of ln I_MB0, usable for any x >= 0 (slow for large x).
double log_bessel_mb0_series(double x);

/// Large-argument branch, ln[sqrt(8/pi) e^x / sqrt(x)] plus the first
/// `correction_terms` terms of the asymptotic series (0 gives the leading form).
double log_bessel_mb0_asymptotic(double x, int correction_terms = 8);

/// ln p_s(I) up to an additive constant. Throws DomainError for I < 0.
double log_density(double intensity, const FPParams& p);

struct QuadratureOptions {
  double rel_tol = 1e-11;
  double drop_nats = 60.0;
  int max_panels = 4000;
};

/// p_s(I) sampled on a converged quadrature rule. Moments are weighted sums
/// over the nodes; the normalization constant is never formed in linear space.
class SteadyStateDistribution {
 public:
  static SteadyStateDistribution compute(const FPParams& p, const QuadratureOptions& opts = {});

  const FPParams& params() const { return params_; }
  const Eigen::ArrayXd& grid() const { return grid_; }
  const Eigen::ArrayXd& log_density() const { return log_density_; }
  /// Normalized probability weight of each node; sums to 1.
  const Eigen::ArrayXd& probabilities() const { return probabilities_; }

  double mode() const { return mode_; }
  double lower_cut() const { return lower_cut_; }
  double upper_cut() const { return upper_cut_; }
  int panels() const { return panels_; }
  /// Relative quadrature error estimate of the normalization integral.
  double mass_error() const { return mass_error_; }

  /// Raw moment <I^n>.
  double moment(int n) const;
  double mean() const { return mean_; }
  /// Central second moment, computed directly rather than as <I^2> - <I>^2.
  double variance() const;
  /// <I^{n+1}> - <I^n><I>, computed as a centered covariance.
  double power_covariance(int n) const;

 private:
  FPParams params_;
  Eigen::ArrayXd grid_, log_density_, probabilities_;
  double mode_ = 0.0, lower_cut_ = 0.0, upper_cut_ = 0.0, mean_ = 0.0, mass_error_ = 0.0;
  int panels_ = 0;
};

/// <I^n> for n = 1..n_max.
Eigen::ArrayXd moments(const FPParams& p, int n_max);

/// d<I^n>/d kappa' = -(<I^{n+1}> - <I^n><I>) / 4Q.
double moment_derivative(const SteadyStateDistribution& dist, int n);
double moment_derivative(const FPParams& p, int n);

/// Normalized responsivity R = (-c/4Q) (<I^2> - <I>^2) / <I>, in meters.
double responsivity(const SteadyStateDistribution& dist);
double responsivity(const FPParams& p);

/// (d<I~>/da) / <I~>, the pump-normalized responsivity. Requires kappa_G > 0.
double normalized_threshold_responsivity(const SteadyStateDistribution& dist);

struct CellFailure {
  Eigen::Index gain_index;
  Eigen::Index drive_index;
  std::string message;
};

/// |R| over a (gain x drive) grid; rows follow `gain`, columns follow `drive`.
struct ResponsivityMap {
  Eigen::ArrayXd drive;
  Eigen::ArrayXd gain;
  Eigen::MatrixXd abs_responsivity;  // m, NaN for failed cells
  Eigen::MatrixXd mean_intensity;    // photons
  std::vector<CellFailure> failures;
};

/// Cells are independent; `threads` only affects wall time. Each cell uses
/// `fixed` with its drive and gain replaced; when `fixed.q` is not positive
/// Q = 2 kappa_G is used per cell.
ResponsivityMap responsivity_map(const Eigen::ArrayXd& drive, const Eigen::ArrayXd& gain,
                                 const FPParams& fixed, int threads = 1);

/// Cross-section of the map at one drive value with classical references.
struct GainSlice {
  double drive;
  Eigen::ArrayXd gain;
  Eigen::ArrayXd abs_responsivity;      // m
  Eigen::ArrayXd mean_intensity;        // photons
  Eigen::ArrayXd classical_intensity;   // Q -> 0, zero drive: max(0, I_sat (kappa_G/kappa' - 1))
  Eigen::ArrayXd no_emission_limit;     // c / 2 gamma' above threshold, NaN elsewhere
};

GainSlice gain_slice(double drive, const Eigen::ArrayXd& gain, const FPParams& fixed, int threads = 1);

template <std::floating_point Scalar>
struct ThresholdMoments {
  Scalar mean;      // <I~>
  Scalar variance;  // <dI~^2>
};

/// Closed-form drive-free moments of exp(-(I~ - a)^2 / 4) on I~ >= 0 (a
/// normal of variance 2 truncated at zero). With
/// g = 2 exp(-a^2/4) / (sqrt(pi) (1 + erf(a/2))):
///   <I~> = a + g,   <dI~^2> = 2 - a g - g^2.
template <std::floating_point Scalar>
ThresholdMoments<Scalar> near_threshold_moments(Scalar a) {
  using std::exp;
  using std::sqrt;
  const Scalar z = -a / Scalar(2);
  // g = 2 exp(-a^2/4) / (sqrt(pi) (1 + erf(a/2))) = 2 / (sqrt(pi) erfcx(z)).
  Scalar g;
  if (z < Scalar(25)) {
    g = Scalar(2) * exp(-a * a / Scalar(4)) / (sqrt(std::numbers::pi_v<Scalar>) * std::erfc(z));
  } else {
    // erfcx(z) ~ 1/(z sqrt(pi)) * (1 - 1/(2z^2) + 3/(4z^4) - 15/(8z^6))
    const Scalar iz2 = Scalar(1) / (z * z);
    const Scalar series = Scalar(1) - iz2 / Scalar(2) + Scalar(3) * iz2 * iz2 / Scalar(4) -
                          Scalar(15) * iz2 * iz2 * iz2 / Scalar(8);
    g = Scalar(2) * z / series;
  }
  const Scalar mean = a + g;
  const Scalar variance = Scalar(2) - a * g - g * g;
  return {mean, variance};
}

}  // namespace icas
