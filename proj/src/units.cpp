#include "icas/units.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "icas/errors.hpp"

namespace icas {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }
bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

void CavityGeometry::validate() const {
  require(finite_positive(length), "cavity length must be positive");
  require(finite_positive(mode_area), "mode area must be positive");
  require(finite_positive(wavelength), "wavelength must be positive");
  require(finite_positive(delta1) && delta1 < 1.0, "mirror transmission delta1 must lie in (0, 1)");
  require(finite_nonneg(delta0), "mirror absorption delta0 must be non-negative");
}

double CavityGeometry::finesse() const { return 2.0 * std::numbers::pi / delta_c(); }

double CavityGeometry::linewidth() const { return kappa_c() / (2.0 * std::numbers::pi); }

std::string_view to_string(MediumKind kind) {
  switch (kind) {
    case MediumKind::kNone: return "none";
    case MediumKind::kGain: return "gain";
    case MediumKind::kSaturableLoss: return "saturable-loss";
  }
  return "unknown";
}

void MediumSpec::validate() const {
  require(finite_nonneg(kappa), "medium rate must be non-negative");
  require(finite_positive(i_sat), "saturation intensity must be positive");
  require(finite_nonneg(q0), "spontaneous-emission coefficient must be non-negative");
}

double MediumSpec::signed_gain() const {
  switch (kind) {
    case MediumKind::kGain: return kappa;
    case MediumKind::kSaturableLoss: return -kappa;
    case MediumKind::kNone: return 0.0;
  }
  return 0.0;
}

double MediumSpec::diffusion(double intensity) const {
  if (kind == MediumKind::kSaturableLoss) return q0 * intensity / (intensity + i_sat);
  return q0;
}

MediumSpec gain_medium(double kappa_g, double i_sat) {
  MediumSpec m{MediumKind::kGain, kappa_g, i_sat, 2.0 * kappa_g};
  m.validate();
  return m;
}

MediumSpec saturable_absorber(double kappa_l, double i_sat, double q0) {
  MediumSpec m{MediumKind::kSaturableLoss, kappa_l, i_sat, q0 < 0.0 ? 2.0 * kappa_l : q0};
  m.validate();
  return m;
}

void TraceGas::validate() const {
  require(finite_nonneg(alpha_s), "absorption coefficient must be non-negative");
}

void NoiseBudget::validate() const {
  require(finite_nonneg(v_t) && finite_nonneg(rin) && finite_nonneg(g_drift_var) &&
              finite_nonneg(gamma_t),
          "noise budget entries must be non-negative");
}

CavityRates rates_from_geometry(const CavityGeometry& geom) {
  geom.validate();
  const double kappa = geom.kappa_c();
  const double linewidth = kappa / (2.0 * std::numbers::pi);
  return {kappa, geom.fsr() / linewidth, geom.fsr(), linewidth};
}

double photons_from_wcm2(double intensity_wcm2, const CavityGeometry& geom) {
  if (!finite_nonneg(intensity_wcm2)) {
    throw DomainError("intensity must be finite and non-negative, got " + std::to_string(intensity_wcm2));
  }
  const double watts = intensity_wcm2 * constants::wcm2_to_wm2 * geom.mode_area;
  return watts * geom.length / (geom.photon_energy() * constants::speed_of_light);
}

double wcm2_from_photons(double photons, const CavityGeometry& geom) {
  if (!finite_nonneg(photons)) throw DomainError("photon number must be finite and non-negative");
  const double watts = photons * geom.photon_energy() * constants::speed_of_light / geom.length;
  return watts / (geom.mode_area * constants::wcm2_to_wm2);
}

double i_sat_from_eta0(double eta0) {
  require(finite_positive(eta0), "eta0 must be positive");
  const double root = eta0 * std::sqrt(std::numbers::pi) / 4.0;
  return root * root;
}

double eta0_from_i_sat(double i_sat) {
  require(finite_positive(i_sat), "saturation intensity must be positive");
  return 4.0 / std::sqrt(std::numbers::pi) * std::sqrt(i_sat);
}

double input_power_from_drive(double drive, const CavityGeometry& geom) {
  return 4.0 * geom.photon_energy() * drive * drive / geom.kappa_c();
}

double drive_from_input_power(double power, const CavityGeometry& geom) {
  require(finite_nonneg(power), "input power must be non-negative");
  return std::sqrt(power * geom.kappa_c() / (4.0 * geom.photon_energy()));
}

}  // namespace icas
