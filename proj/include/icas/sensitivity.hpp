#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "icas/curve.hpp"
#include "icas/units.hpp"

namespace icas {

/// Undriven gain cavity above threshold, linearized:
///   (4 gamma'^2 / c^2) ( (2 kappa'_G^2 / (I_sat gamma'^2)) / (1 + gamma' t) + v_T ).
/// Throws DomainError unless 0 < gamma' <= kappa'_G; sets meta.warning outside
/// kappa'_G / sqrt(I_sat) < gamma' < kappa'_G.
SensitivityCurve gain_sensitivity_curve(double gamma_prime, double kappa_g_prime, double i_sat, double v_t,
                                        const Eigen::ArrayXd& t_grid);

/// Driven gain cavity just below threshold with the drive at its saturation bound
/// E0^2 = 2 I_sat gamma'^3 / kappa_G:
///   (gamma'^2 / c^2) ( (4 kappa_G^2 / (I_sat gamma'^2)) / (1 + gamma' t / 2) + v_T ).
/// Throws DomainError outside kappa_G / sqrt(I_sat) <= gamma' <= kappa_G.
SensitivityCurve driven_gain_sensitivity_curve(double gamma_prime, double kappa_g, double i_sat, double v_t,
                                               const Eigen::ArrayXd& t_grid);

/// Empty-cavity curve in rate form, (kappa'^2 / 4c^2) ( (1/I) / (1 + kappa' t) + v_T ).
SensitivityCurve empty_sensitivity_curve(double kappa_e_prime, double intensity, double v_t,
                                         const Eigen::ArrayXd& t_grid);

/// Scalar evaluations of the two curves at one time.
double gain_dalpha2(double gamma_prime, double kappa_g_prime, double i_sat, double v_t, double t);
double empty_dalpha2(double kappa_e_prime, double intensity, double v_t, double t);

enum class Clamp { kInterior, kLower, kUpper, kMirrorLimit };

std::string_view to_string(Clamp c);

struct OperatingPoint {
  double gamma_prime;   // 1/s
  double intensity;     // <I> = 2 I_sat gamma' / kappa'_G, photons
  double pump;          // a = gamma' sqrt(I_sat) / kappa'_G
  Clamp clamped;
  double dalpha2_at_t;  // 1/m^2
  double gamma_lower;   // feasible bracket used
  double gamma_upper;
};

/// Minimize gain_dalpha2 at t_star over gamma' in
/// [min_pump kappa'_G / sqrt(I_sat), min(kappa'_G, kappa'_G I_M / (2 I_sat))]
/// by golden section on log gamma'. Throws ConfigError if the interval is empty.
OperatingPoint optimize_operating_point(double t_star, double v_t, double kappa_g_prime, double i_sat,
                                        double mirror_limit, double min_pump = 5.0);

struct Crossover {
  double t_c;           // gain intermediate-time term meets empty floor
  double t_g;           // gain curve levels out
  double t_e;           // empty curve levels out
  double chi_max;       // t_G / t_c = 16 kappa'_E^2 / gamma'^2
  double v_t_critical;  // chi = 1 at t_chi
  double long_time_ratio;  // (d alpha^2)_G / (d alpha^2)_E as t -> inf = 16 gamma'^2 / kappa'_E^2
};

Crossover crossover_analysis(double kappa_g_prime, double kappa_e_prime, double i_sat, double i_e,
                             double gamma_prime, double v_t, double t_chi = 1.0);

/// First time in [t_lo, t_hi] where the full gain curve drops below the empty
/// curve, located on a log grid and refined by bisection.
std::optional<double> curve_intersection_time(double gamma_prime, double kappa_g_prime, double i_sat,
                                              double kappa_e_prime, double i_e, double v_t, double t_lo,
                                              double t_hi);

/// Gain-versus-empty comparison for a fixed geometry.
struct CompareConfig {
  CavityGeometry cavity;          // empty-cavity mirrors (delta1_E)
  double delta1_gain = 1e-4;      // mirror transmission of the gain cavity
  double eta0 = 1e6;
  double mirror_limit_wcm2 = 1e4;
  double v_t = 1e-9;
  double t_star = 1.0;
  double min_pump = 5.0;
  double detune_factor = 3.0;     // pump multiplier for the off-optimum curves
  Eigen::ArrayXd t_grid;
  Eigen::ArrayXd v_t_sweep;
};

struct TechnicalNoiseRow {
  double v_t;
  double dalpha2_gain;
  double dalpha2_empty;
  double intensity_opt;
  double intensity_empty;
  double gamma_prime;
  Clamp clamped;
};

struct CompareResult {
  double kappa_g_prime;
  double kappa_e_prime;
  double i_sat;
  double i_empty;  // mirror-limit photon number
  OperatingPoint optimum;
  SensitivityCurve gain;
  SensitivityCurve gain_low;   // pump divided by detune_factor
  SensitivityCurve gain_high;  // pump multiplied by detune_factor
  SensitivityCurve empty;
  Crossover crossover;
  std::optional<double> intersection_time;
  std::vector<TechnicalNoiseRow> sweep;
  std::optional<double> v_t_critical;  // where the optimized gain case ties the empty cavity at t_star
};

CompareResult compare_cases(const CompareConfig& cfg);

/// v_T at which the optimized gain case ties the empty cavity at t_star, by
/// bisection in log v_T over [lo, hi]. Empty when no sign change exists.
std::optional<double> critical_technical_noise(double t_star, double kappa_g_prime, double kappa_e_prime,
                                               double i_sat, double i_e, double mirror_limit, double min_pump,
                                               double lo = 1e-30, double hi = 1.0);

}  // namespace icas
