#pragma once

#include <Eigen/Core>

#include "icas/curve.hpp"
#include "icas/units.hpp"

namespace icas {

/// Single-pass medium of length `length` with gain, background loss and sample loss (1/m).
struct SinglePassMedium {
  double alpha_l = 0.0;
  double alpha_g = 0.0;
  double alpha_s = 0.0;
  double length = 1.0;
};

/// Shotnoise-limited d alpha_S^2 after integrating for `t` seconds.
double single_pass_sensitivity(const SinglePassMedium& medium, double p0, double t, double photon_energy);

struct SinglePassOptimum {
  double length;   // 2 / alpha_L
  double dalpha2;  // (alpha_L^2 / 4) hbar omega / (t e^-2 P0)
};

SinglePassOptimum single_pass_optimum(double alpha_l, double p0, double t, double photon_energy);

struct PowerPoint {
  double p0;
  double p1;
  double responsivity_norm;  // m
  double intensity;          // photons
};

/// Total round-trip loss 2 delta1 + delta0 + 2 L alpha_S + delta_L.
double round_trip_loss(const CavityGeometry& geom, double delta_l, double alpha_s);

/// Steady-state transmission of a cavity with intensity-independent losses.
/// Throws DomainError("no steady state") for non-positive total loss.
PowerPoint empty_cavity_output(double p0, const CavityGeometry& geom, double delta_l, double alpha_s);

/// Exact normalized responsivity -4L/delta.
double empty_cavity_responsivity(const CavityGeometry& geom, double delta_l, double alpha_s);

/// Low-absorption approximation -2L/delta1, valid for delta_L = 0 and 2 L alpha_S << 2 delta1.
double empty_cavity_responsivity_approx(const CavityGeometry& geom);

enum class FloorSource { kTechnical, kRin };

/// Empty-cavity shotnoise curve, (kappa_C^2 / 4c^2) ((1/I) / (1 + kappa_C t) + v),
/// where v is the technical floor or the input RIN.
SensitivityCurve empty_cavity_sensitivity_curve(const CavityGeometry& geom, double intensity,
                                                const NoiseBudget& noise, const Eigen::ArrayXd& t_grid,
                                                FloorSource floor = FloorSource::kTechnical);

/// Input-RIN contribution, (delta1^2 / 4L^2) RIN.
double rin_propagation(const CavityGeometry& geom, double rin);

}  // namespace icas
