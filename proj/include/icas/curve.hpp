#pragma once

#include <string>

#include <Eigen/Core>

namespace icas {

/// Uncertainty-vs-time curve of the two-term form
///   d alpha^2(t) = prefactor * ( v0 / (1 + gamma t) + floor_variance ).
struct CurveMeta {
  std::string case_tag;
  double rate = 0.0;       // gamma' or kappa used in the responsivity, 1/s
  double intensity = 0.0;  // photons
  double v0 = 0.0;         // short-time relative variance
  double gamma = 0.0;      // fluctuation bandwidth, 1/s
  double prefactor = 0.0;  // 1 / R^2, 1/m^2
  double floor_variance = 0.0;
  double drive = 0.0;      // drive amplitude when applicable, sqrt(photons)/s
  std::string warning;     // set when parameters sit outside the validity regime
};

struct SensitivityCurve {
  Eigen::ArrayXd t;            // s
  Eigen::ArrayXd dalpha2;      // 1/m^2
  Eigen::ArrayXd fluctuation;  // fluctuation term contribution, 1/m^2
  Eigen::ArrayXd floor;        // technical floor contribution, 1/m^2
  CurveMeta meta;

  /// Long-time floor, prefactor * floor_variance.
  double floor_level() const { return meta.prefactor * meta.floor_variance; }
};

/// Evaluate the generic two-term form on `t`. Throws DomainError when `t` is
/// not strictly increasing or contains negative entries.
SensitivityCurve make_two_term_curve(const Eigen::ArrayXd& t, CurveMeta meta);

}  // namespace icas
