#include "icas/sde.hpp"

#include <cmath>
#include <sstream>

#include "icas/errors.hpp"

namespace icas {

void DriveProfile::validate() const {
  if (!(p0_start >= 0.0) || !(p0_stop >= 0.0) || !std::isfinite(p0_start) || !std::isfinite(p0_stop)) {
    throw DomainError("drive power must be finite and non-negative");
  }
  if (kind == Kind::kLinearRamp && !(ramp_time > 0.0)) throw DomainError("ramp duration must be positive");
}

double DriveProfile::power_at(double t) const {
  switch (kind) {
    case Kind::kOff: return 0.0;
    case Kind::kConstant: return p0_start;
    case Kind::kLinearRamp:
      if (t >= ramp_time) return p0_stop;
      return p0_start + (p0_stop - p0_start) * (t / ramp_time);
  }
  return 0.0;
}

double DriveProfile::max_power() const { return kind == Kind::kOff ? 0.0 : std::max(p0_start, p0_stop); }

std::string_view to_string(DriveProfile::Kind kind) {
  switch (kind) {
    case DriveProfile::Kind::kOff: return "off";
    case DriveProfile::Kind::kConstant: return "constant";
    case DriveProfile::Kind::kLinearRamp: return "linear-ramp";
  }
  return "unknown";
}

double SdeConfig::kappa_linear() const {
  return kappa_linear_override >= 0.0 ? kappa_linear_override : geom.kappa_c() + trace.kappa_s();
}

double SdeConfig::max_rate() const { return kappa_linear() + std::abs(medium.kappa); }

void SdeConfig::validate() const {
  geom.validate();
  medium.validate();
  trace.validate();
  drive.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("dt must be positive");
  if (!(duration > 0.0) || !std::isfinite(duration)) throw DomainError("duration must be positive");
  if (record_stride < 1) throw DomainError("record_stride must be at least 1");
  if (!std::isfinite(e1_init) || !std::isfinite(e2_init)) throw DomainError("initial field must be finite");
  if (dt * max_rate() > 0.01) {
    std::ostringstream msg;
    msg << "dt * max_rate = " << dt * max_rate() << " exceeds 0.01";
    throw DomainError(msg.str());
  }
}

FieldIntegrator::FieldIntegrator(const SdeConfig& cfg)
    : cfg_(cfg),
      rng_(cfg.seed, cfg.shot, cfg.stream),
      dt_(cfg.dt),
      sqrt_dt_(std::sqrt(cfg.dt)),
      kappa_linear_(cfg.kappa_linear()),
      gain_(cfg.medium.signed_gain()),
      i_sat_(cfg.medium.i_sat),
      drive_scale_(std::sqrt(cfg.geom.kappa_c() / (4.0 * cfg.geom.photon_energy()))),
      power_scale_(cfg.geom.photon_energy() * cfg.geom.kappa_c()),
      e1_(cfg.e1_init),
      e2_(cfg.e2_init) {
  cfg_.validate();
}

double FieldIntegrator::drive_at(double t) const { return drive_scale_ * std::sqrt(cfg_.drive.power_at(t)); }

void FieldIntegrator::step() {
  const double i = intensity();
  const double rate = 0.5 * (gain_ / (1.0 + i / i_sat_) - kappa_linear_);
  const double noise = std::sqrt(2.0 * cfg_.medium.diffusion(i)) * sqrt_dt_;
  const double e0 = cfg_.drive.kind == DriveProfile::Kind::kOff ? 0.0 : drive_at(t());
  const double w1 = rng_.normal();
  const double w2 = rng_.normal();
  e1_ += (rate * e1_ + e0) * dt_ + noise * w1;
  e2_ += rate * e2_ * dt_ + noise * w2;
  ++steps_;
  if (!std::isfinite(e1_) || !std::isfinite(e2_)) {
    std::ostringstream msg;
    msg << "non-finite field at step " << steps_;
    throw NumericalError(msg.str());
  }
}

Trajectory integrate(const SdeConfig& cfg) {
  FieldIntegrator f(cfg);
  const auto n_steps = static_cast<std::uint64_t>(std::llround(cfg.duration / cfg.dt));
  const auto stride = static_cast<std::uint64_t>(cfg.record_stride);
  const Eigen::Index n_rec = static_cast<Eigen::Index>(n_steps / stride) + 1;
  Trajectory tr;
  tr.seed = cfg.seed;
  tr.t.resize(n_rec);
  tr.e1.resize(n_rec);
  tr.e2.resize(n_rec);
  tr.intensity.resize(n_rec);
  auto record = [&](Eigen::Index k) {
    tr.t[k] = f.t();
    tr.e1[k] = f.e1();
    tr.e2[k] = f.e2();
    tr.intensity[k] = f.intensity();
  };
  record(0);
  for (Eigen::Index k = 1; k < n_rec; ++k) {
    for (std::uint64_t s = 0; s < stride; ++s) f.step();
    record(k);
  }
  return tr;
}

}  // namespace icas
