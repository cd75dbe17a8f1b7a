#pragma once

#include <numbers>
#include <string_view>

#include "icas/constants.hpp"

namespace icas {

/// Fabry-Perot cavity with symmetric mirrors.
///
/// `delta1` is the transmission of one mirror, `delta0` the total mirror
/// absorption. All derived rates are intensity (not field) rates in 1/s.
struct CavityGeometry {
  double length = 1.0;          // m
  double mode_area = std::numbers::pi * 1e-6;  // m^2, 1 mm radius
  double wavelength = 1.064e-6; // m
  double delta1 = 1.0e-5;
  double delta0 = 0.0;

  /// Throws DomainError when a field violates its physical range.
  void validate() const;

  double round_trip_time() const { return 2.0 * length / constants::speed_of_light; }
  double delta_c() const { return delta0 + 2.0 * delta1; }
  double kappa_c() const { return delta_c() / round_trip_time(); }
  double fsr() const { return constants::speed_of_light / (2.0 * length); }
  double finesse() const;
  double linewidth() const;
  double photon_energy() const { return constants::planck * constants::speed_of_light / wavelength; }
};

enum class MediumKind { kNone, kGain, kSaturableLoss };

std::string_view to_string(MediumKind kind);

/// Intracavity medium. `kappa` is the unsaturated rate magnitude: kappa_G for
/// gain, kappa_L for a saturable absorber.
struct MediumSpec {
  MediumKind kind = MediumKind::kNone;
  double kappa = 0.0;   // 1/s
  double i_sat = 1.0;   // photons
  double q0 = 0.0;      // 1/s

  void validate() const;

  /// Gain signed as it enters the field drift: +kappa_G, -kappa_L, or 0.
  double signed_gain() const;

  /// Spontaneous-emission coefficient at intensity `intensity`.
  /// Constant for gain and empty media; q0 * I / (I + I_sat) for an absorber.
  double diffusion(double intensity) const;
};

/// Fully inverted gain medium, Q = 2 kappa_G.
MediumSpec gain_medium(double kappa_g, double i_sat);
/// Saturable absorber with Q(I) = q0 I / (I + I_sat); q0 defaults to 2 kappa_L.
MediumSpec saturable_absorber(double kappa_l, double i_sat, double q0 = -1.0);

struct TraceGas {
  double alpha_s = 0.0;  // 1/m
  void validate() const;
  double kappa_s() const { return constants::speed_of_light * alpha_s; }
};

struct NoiseBudget {
  double v_t = 0.0;          // technical variance floor
  double rin = 0.0;          // relative intensity noise variance
  double g_drift_var = 0.0;  // <g'^2>, (1/s)^2
  double gamma_t = 0.0;      // 1/s, informational
  void validate() const;
};

struct CavityRates {
  double kappa_c;
  double finesse;
  double fsr;
  double linewidth;
};

CavityRates rates_from_geometry(const CavityGeometry& geom);

/// Intensity in W/cm^2 to intracavity photon number, I = I_u A L / (hbar omega c).
double photons_from_wcm2(double intensity_wcm2, const CavityGeometry& geom);
double wcm2_from_photons(double photons, const CavityGeometry& geom);

inline constexpr double per_cm_to_per_m(double alpha_per_cm) {
  return alpha_per_cm * constants::per_cm_to_per_m;
}
inline constexpr double per_m_to_per_cm(double alpha_per_m) {
  return alpha_per_m / constants::per_cm_to_per_m;
}

/// Saturation photon number for a threshold photon number eta0 = (4/sqrt(pi)) sqrt(I_sat).
double i_sat_from_eta0(double eta0);
double eta0_from_i_sat(double i_sat);

/// Input power for a drive amplitude, P0 = 4 hbar omega E0^2 / kappa_C.
double input_power_from_drive(double drive, const CavityGeometry& geom);
double drive_from_input_power(double power, const CavityGeometry& geom);

}  // namespace icas
