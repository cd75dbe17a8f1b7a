#include "icas/analytic.hpp"

#include <cmath>
#include <utility>

#include "icas/errors.hpp"

namespace icas {

SensitivityCurve make_two_term_curve(const Eigen::ArrayXd& t, CurveMeta meta) {
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    if (!std::isfinite(t[i]) || t[i] < 0.0) throw DomainError("time grid entries must be finite and >= 0");
    if (i > 0 && !(t[i] > t[i - 1])) throw DomainError("time grid must be strictly increasing");
  }
  SensitivityCurve curve;
  curve.t = t;
  curve.fluctuation = meta.prefactor * meta.v0 / (1.0 + meta.gamma * t);
  curve.floor = Eigen::ArrayXd::Constant(t.size(), meta.prefactor * meta.floor_variance);
  curve.dalpha2 = curve.fluctuation + curve.floor;
  curve.meta = std::move(meta);
  return curve;
}

double single_pass_sensitivity(const SinglePassMedium& medium, double p0, double t, double photon_energy) {
  if (!(p0 > 0.0)) throw DomainError("input power must be positive");
  if (!(t > 0.0)) throw DomainError("integration time must be positive");
  if (!(medium.length > 0.0)) throw DomainError("medium length must be positive");
  const double p1 = std::exp((medium.alpha_g - medium.alpha_l - medium.alpha_s) * medium.length) * p0;
  return photon_energy / (medium.length * medium.length * t * p1);
}

SinglePassOptimum single_pass_optimum(double alpha_l, double p0, double t, double photon_energy) {
  if (!(alpha_l > 0.0)) throw DomainError("background loss must be positive for a finite optimum");
  if (!(p0 > 0.0) || !(t > 0.0)) throw DomainError("input power and time must be positive");
  return {2.0 / alpha_l, alpha_l * alpha_l / 4.0 * photon_energy / (t * std::exp(-2.0) * p0)};
}

double round_trip_loss(const CavityGeometry& geom, double delta_l, double alpha_s) {
  return geom.delta_c() + 2.0 * geom.length * alpha_s + delta_l;
}

namespace {

double checked_loss(const CavityGeometry& geom, double delta_l, double alpha_s) {
  const double delta = round_trip_loss(geom, delta_l, alpha_s);
  if (!(delta > 0.0)) throw DomainError("no steady state: net round-trip gain");
  return delta;
}

}  // namespace

PowerPoint empty_cavity_output(double p0, const CavityGeometry& geom, double delta_l, double alpha_s) {
  if (!(p0 >= 0.0)) throw DomainError("input power must be non-negative");
  const double delta = checked_loss(geom, delta_l, alpha_s);
  const double ratio = 2.0 * geom.delta1 / delta;
  const double p1 = ratio * ratio * p0;
  return {p0, p1, -4.0 * geom.length / delta, p1 / (geom.photon_energy() * geom.kappa_c())};
}

double empty_cavity_responsivity(const CavityGeometry& geom, double delta_l, double alpha_s) {
  return -4.0 * geom.length / checked_loss(geom, delta_l, alpha_s);
}

double empty_cavity_responsivity_approx(const CavityGeometry& geom) {
  return -2.0 * geom.length / geom.delta1;
}

SensitivityCurve empty_cavity_sensitivity_curve(const CavityGeometry& geom, double intensity,
                                                const NoiseBudget& noise, const Eigen::ArrayXd& t_grid,
                                                FloorSource floor) {
  if (!(intensity > 0.0)) throw DomainError("intracavity photon number must be positive");
  noise.validate();
  const double kappa = geom.kappa_c();
  const double c = constants::speed_of_light;
  CurveMeta meta;
  meta.case_tag = "empty";
  meta.rate = kappa;
  meta.intensity = intensity;
  meta.v0 = 1.0 / intensity;
  meta.gamma = kappa;
  meta.prefactor = kappa * kappa / (4.0 * c * c);
  meta.floor_variance = floor == FloorSource::kRin ? noise.rin : noise.v_t;
  return make_two_term_curve(t_grid, std::move(meta));
}

double rin_propagation(const CavityGeometry& geom, double rin) {
  if (!(rin >= 0.0)) throw DomainError("RIN must be non-negative");
  return geom.delta1 * geom.delta1 / (4.0 * geom.length * geom.length) * rin;
}

}  // namespace icas
