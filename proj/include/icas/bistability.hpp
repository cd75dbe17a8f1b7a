#pragma once

#include <optional>
#include <vector>

#include <Eigen/Core>

#include "icas/units.hpp"

namespace icas {

/// kappa_L / (1 + I / I_sat).
double saturated_loss(double intensity, double kappa_l, double i_sat);

struct SteadyRoot {
  double intensity;  // photons
  bool stable;
};

/// Absorptive-bistability problem: empty cavity plus trace gas plus a
/// saturable absorber of unsaturated rate kappa_L.
struct AbsorberCavity {
  CavityGeometry geom;
  double kappa_l = 0.0;  // 1/s
  double i_sat = 1.0;    // photons
  double alpha_s = 0.0;  // 1/m

  void validate() const;
  /// Unsaturable decay rate kappa_C + c alpha_S.
  double kappa_linear() const;
  /// Input power that holds the steady intracavity intensity at `intensity`,
  ///   P0 = hbar omega I (kappa' + kappa_L / (1 + I/I_sat))^2 / kappa_C.
  double input_power(double intensity) const;
  /// dP0/dI of the steady-state relation.
  double input_power_slope(double intensity) const;
};

/// Real non-negative solutions of I (kappa' + kappa_L/(1+I/I_sat))^2 = P0 kappa_C / hbar omega,
/// ascending. The middle of three roots is flagged unstable.
std::vector<SteadyRoot> steady_intensities(double p0, const AbsorberCavity& cav);

struct TurningPoints {
  double i_plus;       // upper turning intensity, local minimum of P0(I)
  double i_minus;      // lower turning intensity, local maximum of P0(I)
  double p0_plus;      // P0 at i_plus, where the upper branch ends (jump down)
  double p0_minus;     // P0 at i_minus, where the lower branch ends (jump up)
  double x;            // kappa_L = 8 kappa' (1 + x^2)
  double approx_plus;  // I_sat (3 + 4x)
  double approx_minus; // I_sat (3 - 4x)
};

/// Turning points of the S-curve, or nullopt when kappa_L < 8 kappa'.
std::optional<TurningPoints> turning_points(const AbsorberCavity& cav);

/// P0 where an upward sweep leaves the lower branch. Nullopt without bistability.
std::optional<double> jump_up_power(const AbsorberCavity& cav);

struct BistabilityCurve {
  Eigen::ArrayXd p0_grid;                     // W
  std::vector<std::vector<SteadyRoot>> roots; // per grid point
  Eigen::ArrayXd up;                          // intensity followed on an increasing sweep
  Eigen::ArrayXd down;                        // intensity followed on a decreasing sweep
  std::optional<TurningPoints> turning;
  double x_param = 0.0;                       // NaN when kappa_L < 8 kappa'
  std::optional<Eigen::Index> jump_up_index;  // first grid index on the upper branch going up
  std::optional<Eigen::Index> jump_down_index;  // last grid index on the lower branch going down
};

/// Throws DomainError unless p0_grid is non-negative and strictly increasing.
BistabilityCurve hysteresis_sweep(const Eigen::ArrayXd& p0_grid, const AbsorberCavity& cav);

}  // namespace icas
