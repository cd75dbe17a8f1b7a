#include "icas/sensitivity.hpp"

#include <cmath>
#include <sstream>

#include "icas/errors.hpp"
#include "icas/golden_section.hpp"

namespace icas {
namespace {

constexpr double kC = constants::speed_of_light;

void check_grid(const Eigen::ArrayXd& t) {
  if (t.size() == 0) throw DomainError("time grid must be non-empty");
}

}  // namespace

std::string_view to_string(Clamp c) {
  switch (c) {
    case Clamp::kInterior: return "interior";
    case Clamp::kLower: return "lower";
    case Clamp::kUpper: return "upper";
    case Clamp::kMirrorLimit: return "mirror-limit";
  }
  return "unknown";
}

double gain_dalpha2(double gamma_prime, double kappa_g_prime, double i_sat, double v_t, double t) {
  const double g2 = gamma_prime * gamma_prime;
  const double v0 = 2.0 * kappa_g_prime * kappa_g_prime / (i_sat * g2);
  return 4.0 * g2 / (kC * kC) * (v0 / (1.0 + gamma_prime * t) + v_t);
}

double empty_dalpha2(double kappa_e_prime, double intensity, double v_t, double t) {
  return kappa_e_prime * kappa_e_prime / (4.0 * kC * kC) * ((1.0 / intensity) / (1.0 + kappa_e_prime * t) + v_t);
}

SensitivityCurve gain_sensitivity_curve(double gamma_prime, double kappa_g_prime, double i_sat, double v_t,
                                        const Eigen::ArrayXd& t_grid) {
  check_grid(t_grid);
  if (!(gamma_prime > 0.0) || gamma_prime > kappa_g_prime) {
    throw DomainError("gamma' must lie in (0, kappa'_G]");
  }
  if (!(i_sat > 0.0) || !(v_t >= 0.0)) throw DomainError("I_sat must be positive and v_T non-negative");
  CurveMeta meta;
  meta.case_tag = "gain";
  meta.rate = gamma_prime;
  meta.intensity = 2.0 * i_sat * gamma_prime / kappa_g_prime;
  meta.v0 = 2.0 * kappa_g_prime * kappa_g_prime / (i_sat * gamma_prime * gamma_prime);
  meta.gamma = gamma_prime;
  meta.prefactor = 4.0 * gamma_prime * gamma_prime / (kC * kC);
  meta.floor_variance = v_t;
  if (!(gamma_prime > kappa_g_prime / std::sqrt(i_sat)) || !(gamma_prime < kappa_g_prime)) {
    meta.warning = "gamma' outside the linearization regime kappa'_G/sqrt(I_sat) < gamma' < kappa'_G";
  }
  return make_two_term_curve(t_grid, std::move(meta));
}

SensitivityCurve driven_gain_sensitivity_curve(double gamma_prime, double kappa_g, double i_sat, double v_t,
                                               const Eigen::ArrayXd& t_grid) {
  check_grid(t_grid);
  if (!(i_sat > 0.0) || !(v_t >= 0.0)) throw DomainError("I_sat must be positive and v_T non-negative");
  const double lower = kappa_g / std::sqrt(i_sat);
  if (!(gamma_prime >= lower) || !(gamma_prime <= kappa_g)) {
    throw DomainError("driven gain case requires kappa_G/sqrt(I_sat) <= gamma' <= kappa_G");
  }
  CurveMeta meta;
  meta.case_tag = "driven-gain";
  meta.rate = gamma_prime;
  meta.drive = std::sqrt(2.0 * i_sat * gamma_prime * gamma_prime * gamma_prime / kappa_g);
  meta.intensity = meta.drive * meta.drive / (gamma_prime * gamma_prime);
  meta.v0 = 4.0 * kappa_g * kappa_g / (i_sat * gamma_prime * gamma_prime);
  meta.gamma = 0.5 * gamma_prime;
  meta.prefactor = gamma_prime * gamma_prime / (kC * kC);
  meta.floor_variance = v_t;
  if (gamma_prime < 5.0 * lower || gamma_prime > kappa_g / 5.0) {
    meta.warning = "gamma' within a factor of 5 of the linearization bounds";
  }
  return make_two_term_curve(t_grid, std::move(meta));
}

SensitivityCurve empty_sensitivity_curve(double kappa_e_prime, double intensity, double v_t,
                                         const Eigen::ArrayXd& t_grid) {
  check_grid(t_grid);
  if (!(intensity > 0.0)) throw DomainError("intracavity photon number must be positive");
  CurveMeta meta;
  meta.case_tag = "empty";
  meta.rate = kappa_e_prime;
  meta.intensity = intensity;
  meta.v0 = 1.0 / intensity;
  meta.gamma = kappa_e_prime;
  meta.prefactor = kappa_e_prime * kappa_e_prime / (4.0 * kC * kC);
  meta.floor_variance = v_t;
  return make_two_term_curve(t_grid, std::move(meta));
}

OperatingPoint optimize_operating_point(double t_star, double v_t, double kappa_g_prime, double i_sat,
                                        double mirror_limit, double min_pump) {
  if (!(t_star > 0.0)) throw DomainError("optimization time must be positive");
  const double lower = min_pump * kappa_g_prime / std::sqrt(i_sat);
  const double mirror_gamma = kappa_g_prime * mirror_limit / (2.0 * i_sat);
  const double upper = std::min(kappa_g_prime, mirror_gamma);
  if (!(lower < upper)) {
    std::ostringstream msg;
    msg << "empty feasible gamma' interval [" << lower << ", " << upper << "]";
    throw ConfigError(msg.str());
  }
  auto objective = [&](double log_gamma) {
    return std::log(gain_dalpha2(std::exp(log_gamma), kappa_g_prime, i_sat, v_t, t_star));
  };
  const double log_lo = std::log(lower);
  const double log_hi = std::log(upper);
  const ScalarMinimum m = golden_section_minimize(objective, log_lo, log_hi, 1e-6 / (log_hi - log_lo + 1.0));

  OperatingPoint op{};
  op.gamma_lower = lower;
  op.gamma_upper = upper;
  // A minimizer pinned within the final bracket of an edge is a clamp.
  const double edge = 1e-5 * (log_hi - log_lo);
  if (m.x - log_lo <= edge) {
    op.gamma_prime = lower;
    op.clamped = Clamp::kLower;
  } else if (log_hi - m.x <= edge) {
    op.gamma_prime = upper;
    op.clamped = mirror_gamma < kappa_g_prime ? Clamp::kMirrorLimit : Clamp::kUpper;
  } else {
    op.gamma_prime = std::exp(m.x);
    op.clamped = Clamp::kInterior;
  }
  op.intensity = 2.0 * i_sat * op.gamma_prime / kappa_g_prime;
  op.pump = op.gamma_prime * std::sqrt(i_sat) / kappa_g_prime;
  op.dalpha2_at_t = gain_dalpha2(op.gamma_prime, kappa_g_prime, i_sat, v_t, t_star);
  return op;
}

Crossover crossover_analysis(double kappa_g_prime, double kappa_e_prime, double i_sat, double i_e,
                             double gamma_prime, double v_t, double t_chi) {
  if (!(kappa_g_prime > 0.0 && kappa_e_prime > 0.0 && i_sat > 0.0 && i_e > 0.0 && gamma_prime > 0.0 &&
        v_t > 0.0 && t_chi > 0.0)) {
    throw DomainError("crossover analysis requires positive rates, intensities and v_T");
  }
  const double kg2 = kappa_g_prime * kappa_g_prime;
  const double ke2 = kappa_e_prime * kappa_e_prime;
  Crossover x{};
  x.t_c = 32.0 * kg2 / (ke2 * i_sat * gamma_prime * v_t);
  x.t_g = 2.0 * kg2 / (i_sat * gamma_prime * gamma_prime * gamma_prime * v_t);
  x.t_e = 2.0 / (i_e * v_t * kappa_e_prime);
  x.chi_max = 16.0 * ke2 / (gamma_prime * gamma_prime);
  x.v_t_critical = 32.0 * kg2 / (ke2 * i_sat * t_chi * gamma_prime);
  x.long_time_ratio = 16.0 * gamma_prime * gamma_prime / ke2;
  return x;
}

std::optional<double> curve_intersection_time(double gamma_prime, double kappa_g_prime, double i_sat,
                                              double kappa_e_prime, double i_e, double v_t, double t_lo,
                                              double t_hi) {
  auto diff = [&](double log_t) {
    const double t = std::exp(log_t);
    return std::log(gain_dalpha2(gamma_prime, kappa_g_prime, i_sat, v_t, t)) -
           std::log(empty_dalpha2(kappa_e_prime, i_e, v_t, t));
  };
  const int n = 400;
  const double a = std::log(t_lo), b = std::log(t_hi);
  double prev_x = a;
  double prev = diff(a);
  if (prev < 0.0) return t_lo;
  for (int i = 1; i <= n; ++i) {
    const double x = a + (b - a) * i / n;
    const double v = diff(x);
    if (v < 0.0) return std::exp(bisect_root(diff, prev_x, x));
    prev_x = x;
    prev = v;
  }
  return std::nullopt;
}

std::optional<double> critical_technical_noise(double t_star, double kappa_g_prime, double kappa_e_prime,
                                               double i_sat, double i_e, double mirror_limit, double min_pump,
                                               double lo, double hi) {
  auto advantage = [&](double log_v) {
    const double v = std::exp(log_v);
    const OperatingPoint op = optimize_operating_point(t_star, v, kappa_g_prime, i_sat, mirror_limit, min_pump);
    return std::log(op.dalpha2_at_t) - std::log(empty_dalpha2(kappa_e_prime, i_e, v, t_star));
  };
  const int n = 120;
  const double a = std::log(lo), b = std::log(hi);
  double prev_x = a;
  double prev = advantage(a);
  for (int i = 1; i <= n; ++i) {
    const double x = a + (b - a) * i / n;
    const double v = advantage(x);
    if ((v < 0.0) != (prev < 0.0)) return std::exp(bisect_root(advantage, prev_x, x, 100));
    prev_x = x;
    prev = v;
  }
  return std::nullopt;
}

CompareResult compare_cases(const CompareConfig& cfg) {
  cfg.cavity.validate();
  if (!(cfg.delta1_gain > 0.0 && cfg.delta1_gain < 1.0)) throw ConfigError("delta1_gain must lie in (0, 1)");
  if (cfg.t_grid.size() == 0) throw ConfigError("time grid must be non-empty");
  if (!(cfg.detune_factor > 1.0)) throw ConfigError("detune_factor must exceed 1");
  CavityGeometry gain_cavity = cfg.cavity;
  gain_cavity.delta1 = cfg.delta1_gain;

  CompareResult r;
  r.kappa_g_prime = gain_cavity.kappa_c();
  r.kappa_e_prime = cfg.cavity.kappa_c();
  r.i_sat = i_sat_from_eta0(cfg.eta0);
  r.i_empty = photons_from_wcm2(cfg.mirror_limit_wcm2, cfg.cavity);

  r.optimum = optimize_operating_point(cfg.t_star, cfg.v_t, r.kappa_g_prime, r.i_sat, r.i_empty, cfg.min_pump);
  r.gain = gain_sensitivity_curve(r.optimum.gamma_prime, r.kappa_g_prime, r.i_sat, cfg.v_t, cfg.t_grid);
  const double g_low = std::max(r.optimum.gamma_prime / cfg.detune_factor, 1e-300);
  const double g_high = std::min(r.optimum.gamma_prime * cfg.detune_factor, r.kappa_g_prime);
  r.gain_low = gain_sensitivity_curve(g_low, r.kappa_g_prime, r.i_sat, cfg.v_t, cfg.t_grid);
  r.gain_high = gain_sensitivity_curve(g_high, r.kappa_g_prime, r.i_sat, cfg.v_t, cfg.t_grid);
  r.empty = empty_sensitivity_curve(r.kappa_e_prime, r.i_empty, cfg.v_t, cfg.t_grid);
  if (cfg.v_t > 0.0) {
    r.crossover = crossover_analysis(r.kappa_g_prime, r.kappa_e_prime, r.i_sat, r.i_empty, r.optimum.gamma_prime,
                                     cfg.v_t, cfg.t_star);
  } else {
    r.crossover = Crossover{};
  }
  r.intersection_time = curve_intersection_time(r.optimum.gamma_prime, r.kappa_g_prime, r.i_sat, r.kappa_e_prime,
                                                r.i_empty, cfg.v_t, cfg.t_grid[0] > 0.0 ? cfg.t_grid[0] : 1e-12,
                                                cfg.t_grid[cfg.t_grid.size() - 1]);

  r.sweep.reserve(static_cast<std::size_t>(cfg.v_t_sweep.size()));
  for (Eigen::Index i = 0; i < cfg.v_t_sweep.size(); ++i) {
    const double v = cfg.v_t_sweep[i];
    const OperatingPoint op = optimize_operating_point(cfg.t_star, v, r.kappa_g_prime, r.i_sat, r.i_empty,
                                                       cfg.min_pump);
    r.sweep.push_back({v, op.dalpha2_at_t, empty_dalpha2(r.kappa_e_prime, r.i_empty, v, cfg.t_star),
                       op.intensity, r.i_empty, op.gamma_prime, op.clamped});
  }
  r.v_t_critical = critical_technical_noise(cfg.t_star, r.kappa_g_prime, r.kappa_e_prime, r.i_sat, r.i_empty,
                                            r.i_empty, cfg.min_pump);
  return r;
}

}  // namespace icas
