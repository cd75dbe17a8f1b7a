#pragma once

#include <cstdint>
#include <string_view>

#include <Eigen/Core>

#include "icas/rng.hpp"
#include "icas/units.hpp"

namespace icas {

/// Input power profile P0(t). The drive enters the in-phase quadrature with
/// amplitude E0 = sqrt(P0 kappa_C / (4 hbar omega)).
struct DriveProfile {
  enum class Kind { kOff, kConstant, kLinearRamp };
  Kind kind = Kind::kOff;
  double p0_start = 0.0;  // W; the constant value for kConstant
  double p0_stop = 0.0;   // W
  double ramp_time = 0.0; // s; P0 holds at p0_stop afterwards

  static DriveProfile off() { return {}; }
  static DriveProfile constant(double p0) { return {Kind::kConstant, p0, p0, 0.0}; }
  static DriveProfile linear_ramp(double start, double stop, double duration) {
    return {Kind::kLinearRamp, start, stop, duration};
  }

  void validate() const;
  double power_at(double t) const;
  double max_power() const;
};

std::string_view to_string(DriveProfile::Kind kind);

struct SdeConfig {
  CavityGeometry geom;
  MediumSpec medium;
  TraceGas trace;
  DriveProfile drive;
  double dt = 0.0;            // s
  double duration = 0.0;      // s
  int record_stride = 1;
  std::uint64_t seed = 0;
  std::uint64_t shot = 0;     // key components for the noise stream
  std::uint64_t stream = 0;
  double e1_init = 0.0;       // sqrt(photons)
  double e2_init = 0.0;
  /// Override for the linear loss kappa' (1/s). When negative, kappa' = kappa_C + c alpha_S.
  double kappa_linear_override = -1.0;

  /// Throws DomainError on invalid fields and when dt * max_rate() > 0.01.
  void validate() const;
  double kappa_linear() const;
  /// Largest relaxation rate in the drift, kappa' + |kappa_M|.
  double max_rate() const;
};

/// Stepper for
///   dE_i = [ (kappa_gain / (1 + I/I_sat) - kappa') E_i / 2 + E0_i(t) ] dt + sqrt(2 Q(I)) dW_i
/// with Q evaluated before the step.
class FieldIntegrator {
 public:
  explicit FieldIntegrator(const SdeConfig& cfg);

  /// Advance one step. Throws NumericalError on a non-finite state.
  void step();

  double t() const { return static_cast<double>(steps_) * dt_; }
  std::uint64_t steps() const { return steps_; }
  double e1() const { return e1_; }
  double e2() const { return e2_; }
  double intensity() const { return e1_ * e1_ + e2_ * e2_; }
  /// Output power hbar omega kappa_C I, W.
  double output_power() const { return power_scale_ * intensity(); }
  double drive_at(double t) const;

 private:
  SdeConfig cfg_;
  KeyedRng rng_;
  double dt_;
  double sqrt_dt_;
  double kappa_linear_;
  double gain_;
  double i_sat_;
  double drive_scale_;  // E0 / sqrt(P0)
  double power_scale_;
  std::uint64_t steps_ = 0;
  double e1_;
  double e2_;
};

struct Trajectory {
  Eigen::ArrayXd t;
  Eigen::ArrayXd e1;
  Eigen::ArrayXd e2;
  Eigen::ArrayXd intensity;
  std::uint64_t seed = 0;
};

/// Integrate over cfg.duration, recording every record_stride steps (and t = 0).
Trajectory integrate(const SdeConfig& cfg);

}  // namespace icas
