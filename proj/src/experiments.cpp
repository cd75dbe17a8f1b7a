#include "icas/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "icas/errors.hpp"
#include "icas/golden_section.hpp"
#include "icas/parallel.hpp"

namespace icas {
namespace {

constexpr double kC = constants::speed_of_light;

struct MeanSe {
  double mean;
  double se;
};

MeanSe mean_and_se(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  const double m = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  const double se = v.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : std::numeric_limits<double>::infinity();
  return {m, se};
}

std::uint64_t step_count(double duration, double dt) {
  return static_cast<std::uint64_t>(std::llround(duration / dt));
}

}  // namespace

// ---------------------------------------------------------------------------

OuCheckResult linearized_ou_check(const OuCheckConfig& cfg) {
  if (!(cfg.a > 0.0)) throw DomainError("linearized OU check needs a > 0 (above threshold)");
  if (cfg.runs < 2) throw DomainError("linearized OU check needs at least two runs");
  const double i_sat = i_sat_from_eta0(cfg.eta0);
  const FPParams p = drive_free_at_pump(cfg.a, cfg.kappa_prime, i_sat);
  const double gamma = 0.5 * (p.kappa_g - p.kappa_prime);
  const double e_bar = std::sqrt(i_sat * (p.kappa_g - p.kappa_prime) / p.kappa_g);
  const double tau_c = 1.0 / (2.0 * gamma);

  SdeConfig base;
  base.medium = gain_medium(p.kappa_g, i_sat);
  base.kappa_linear_override = p.kappa_prime;
  base.dt = cfg.dt_rate / (p.kappa_prime + p.kappa_g);
  base.duration = (cfg.burn_in + cfg.sample_time) * tau_c;
  base.seed = cfg.seed;
  base.e1_init = e_bar;
  base.validate();

  const std::uint64_t burn = step_count(cfg.burn_in * tau_c, base.dt);
  const std::uint64_t n_samples = step_count(cfg.sample_time * tau_c, base.dt) / static_cast<std::uint64_t>(cfg.sample_stride);
  const double sample_dt = base.dt * cfg.sample_stride;
  // Autocorrelation lags out to one predicted correlation time.
  const int n_lags = 20;
  const auto lag_unit = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(tau_c / sample_dt / n_lags)));

  struct RunStats {
    double sum_r = 0, sum_r2 = 0, sum_i = 0, sum_i2 = 0;
    std::vector<double> acf;
    std::vector<double> acf_count;
  };
  std::vector<RunStats> stats(static_cast<std::size_t>(cfg.runs));
  parallel_for(stats.size(), cfg.threads, [&](std::size_t run) {
    SdeConfig c = base;
    c.shot = run;
    FieldIntegrator f(c);
    for (std::uint64_t s = 0; s < burn; ++s) f.step();
    std::vector<double> r(n_samples);
    RunStats& st = stats[run];
    for (std::uint64_t k = 0; k < n_samples; ++k) {
      for (int s = 0; s < cfg.sample_stride; ++s) f.step();
      const double i = f.intensity();
      r[k] = std::sqrt(i);
      st.sum_r += r[k];
      st.sum_r2 += i;
      st.sum_i += i;
      st.sum_i2 += i * i;
    }
    const double m = st.sum_r / static_cast<double>(n_samples);
    st.acf.assign(n_lags + 1, 0.0);
    st.acf_count.assign(n_lags + 1, 0.0);
    for (int l = 0; l <= n_lags; ++l) {
      const std::uint64_t lag = static_cast<std::uint64_t>(l) * lag_unit;
      for (std::uint64_t k = 0; k + lag < n_samples; ++k) st.acf[l] += (r[k] - m) * (r[k + lag] - m);
      st.acf_count[l] = static_cast<double>(n_samples - std::min(n_samples, lag));
    }
  });

  const double n = static_cast<double>(n_samples);
  double total_r = 0, total_i = 0;
  for (const auto& s : stats) {
    total_r += s.sum_r;
    total_i += s.sum_i;
  }
  const double mean_r = total_r / (n * cfg.runs);
  const double mean_i = total_i / (n * cfg.runs);
  std::vector<double> var_b, var_i;
  std::vector<double> acf(n_lags + 1, 0.0), acf_count(n_lags + 1, 0.0);
  for (const auto& s : stats) {
    var_b.push_back(s.sum_r2 / n - 2.0 * mean_r * s.sum_r / n + mean_r * mean_r);
    var_i.push_back(s.sum_i2 / n - 2.0 * mean_i * s.sum_i / n + mean_i * mean_i);
    for (int l = 0; l <= n_lags; ++l) {
      acf[l] += s.acf[l];
      acf_count[l] += s.acf_count[l];
    }
  }
  // Slope through the origin of ln C(lag)/C(0) against lag time.
  double sxy = 0, sxx = 0;
  const double c0 = acf[0] / acf_count[0];
  for (int l = 1; l <= n_lags; ++l) {
    const double ratio = acf[l] / acf_count[l] / c0;
    if (!(ratio > 0.0)) break;
    const double x = static_cast<double>(l * lag_unit) * sample_dt;
    sxy += x * std::log(ratio);
    sxx += x * x;
  }

  OuCheckResult out{};
  const MeanSe vb = mean_and_se(var_b);
  const MeanSe vi = mean_and_se(var_i);
  out.mean_field = e_bar;
  out.variance_measured = vb.mean;
  out.variance_se = vb.se;
  out.variance_predicted = 2.0 * p.q / (4.0 * gamma);
  out.intensity_variance_measured = vi.mean;
  out.intensity_variance_se = vi.se;
  out.intensity_variance_predicted = 8.0 * i_sat;
  out.decay_rate_measured = sxx > 0.0 ? -sxy / sxx : std::numeric_limits<double>::quiet_NaN();
  out.decay_rate_predicted = 2.0 * gamma;
  out.validity_metric = e_bar * e_bar / out.variance_predicted;
  out.gamma_prime = gamma;
  out.q = p.q;
  out.runs = cfg.runs;
  return out;
}

// ---------------------------------------------------------------------------

MomentComparison compare_with_fokker_planck(const FpComparisonConfig& cfg) {
  cfg.params.validate();
  if (cfg.runs < 2) throw DomainError("moment comparison needs at least two runs");
  const FPParams& p = cfg.params;
  const SteadyStateDistribution dist = SteadyStateDistribution::compute(p);

  SdeConfig base;
  base.medium = p.kappa_g > 0.0 ? MediumSpec{MediumKind::kGain, p.kappa_g, p.i_sat, p.q}
                                : MediumSpec{MediumKind::kNone, 0.0, p.i_sat, p.q};
  base.kappa_linear_override = p.kappa_prime;
  base.drive = p.drive > 0.0 ? DriveProfile::constant(input_power_from_drive(p.drive, base.geom)) : DriveProfile::off();
  base.dt = cfg.dt_rate / (p.kappa_prime + p.kappa_g);
  base.duration = cfg.burn_in + cfg.sample_time;
  base.seed = cfg.seed;
  base.e1_init = std::sqrt(dist.mean());
  base.validate();

  const std::uint64_t burn = step_count(cfg.burn_in, base.dt);
  const std::uint64_t n_samples = step_count(cfg.sample_time, base.dt) / static_cast<std::uint64_t>(cfg.sample_stride);
  std::vector<double> means(static_cast<std::size_t>(cfg.runs)), vars(static_cast<std::size_t>(cfg.runs));
  parallel_for(means.size(), cfg.threads, [&](std::size_t run) {
    SdeConfig c = base;
    c.shot = run;
    FieldIntegrator f(c);
    for (std::uint64_t s = 0; s < burn; ++s) f.step();
    double sum = 0, sum2 = 0;
    for (std::uint64_t k = 0; k < n_samples; ++k) {
      for (int s = 0; s < cfg.sample_stride; ++s) f.step();
      const double i = f.intensity();
      sum += i;
      sum2 += i * i;
    }
    const double n = static_cast<double>(n_samples);
    means[run] = sum / n;
    vars[run] = sum2 / n - means[run] * means[run];
  });
  const MeanSe m = mean_and_se(means);
  const MeanSe v = mean_and_se(vars);
  return {m.mean, m.se, v.mean, v.se, dist.mean(), dist.variance()};
}

// ---------------------------------------------------------------------------

SweepUpResult sweep_up_experiment(const SweepUpConfig& cfg) {
  cfg.cavity.validate();
  if (!(cfg.delta_alpha >= 0.0)) throw DomainError("delta_alpha must be non-negative");
  if (cfg.shots < 1) throw DomainError("sweep-up needs at least one shot");
  AbsorberCavity clean = cfg.cavity;
  AbsorberCavity doped = cfg.cavity;
  doped.alpha_s += cfg.delta_alpha;
  const auto tp_clean = turning_points(clean);
  const auto tp_doped = turning_points(doped);
  if (!tp_clean || !tp_doped || tp_clean->i_plus == tp_clean->i_minus || tp_doped->i_plus == tp_doped->i_minus) {
    throw DomainError("sweep-up requires kappa_L > 8 (kappa_C + c alpha_S) in both cavities");
  }

  SweepUpResult out;
  const double kappa_c = clean.geom.kappa_c();
  const double ramp_time = cfg.ramp_time > 0.0 ? cfg.ramp_time : 100.0 / kappa_c;
  out.p0_start = cfg.ramp_low * std::min(tp_clean->p0_plus, tp_doped->p0_plus);
  out.p0_stop = cfg.ramp_high * std::max(tp_clean->p0_minus, tp_doped->p0_minus);
  out.ramp_rate = (out.p0_stop - out.p0_start) / ramp_time;
  out.jump_clean = tp_clean->p0_minus;
  out.jump_doped = tp_doped->p0_minus;
  out.threshold_clean = 0.5 * (tp_clean->i_plus + tp_clean->i_minus);
  out.threshold_doped = 0.5 * (tp_doped->i_plus + tp_doped->i_minus);
  {
    const double h = 1e-4 * clean.kappa_linear() / kC;
    AbsorberCavity lo = clean, hi = clean;
    hi.alpha_s += h;
    lo.alpha_s = std::max(0.0, clean.alpha_s - h);
    out.jump_slope = (*jump_up_power(hi) - *jump_up_power(lo)) / (hi.alpha_s - lo.alpha_s);
  }

  auto make_config = [&](const AbsorberCavity& cav, std::uint64_t stream) {
    SdeConfig c;
    c.geom = cav.geom;
    c.medium = saturable_absorber(cav.kappa_l, cav.i_sat, cfg.q0);
    c.trace.alpha_s = cav.alpha_s;
    c.drive = DriveProfile::linear_ramp(out.p0_start, out.p0_stop, ramp_time);
    c.duration = ramp_time;
    c.seed = cfg.seed;
    c.stream = stream;
    c.e1_init = std::sqrt(steady_intensities(out.p0_start, cav).front().intensity);
    return c;
  };
  SdeConfig base_clean = make_config(clean, 0);
  SdeConfig base_doped = make_config(doped, 1);
  out.dt = cfg.dt_rate / std::max(base_clean.max_rate(), base_doped.max_rate());
  base_clean.dt = base_doped.dt = out.dt;
  base_clean.validate();
  base_doped.validate();
  const std::uint64_t n_steps = step_count(ramp_time, out.dt);

  std::vector<double> trace_t, trace_a, trace_b;
  out.shots.resize(static_cast<std::size_t>(cfg.shots));
  parallel_for(out.shots.size(), cfg.threads, [&](std::size_t shot) {
    SdeConfig ca = base_clean, cb = base_doped;
    ca.shot = cb.shot = shot;
    FieldIntegrator fa(ca), fb(cb);
    const bool tracing = shot == 0 && cfg.trace_stride > 0;
    SweepShot& res = out.shots[shot];
    auto crossing = [&](const FieldIntegrator& f, double prev, double thr) {
      const double now = f.intensity();
      return f.t() - out.dt + out.dt * (thr - prev) / (now - prev);
    };
    for (std::uint64_t s = 0; s < n_steps; ++s) {
      if (tracing && s % static_cast<std::uint64_t>(cfg.trace_stride) == 0) {
        trace_t.push_back(fa.t());
        trace_a.push_back(fa.output_power());
        trace_b.push_back(fb.output_power());
      }
      if (!res.switch_clean) {
        const double prev = fa.intensity();
        fa.step();
        if (fa.intensity() > out.threshold_clean) res.switch_clean = crossing(fa, prev, out.threshold_clean);
      } else if (tracing) {
        fa.step();
      }
      if (!res.switch_doped) {
        const double prev = fb.intensity();
        fb.step();
        if (fb.intensity() > out.threshold_doped) res.switch_doped = crossing(fb, prev, out.threshold_doped);
      } else if (tracing) {
        fb.step();
      }
      if (res.switch_clean && res.switch_doped && !tracing) break;
    }
    if (!res.switch_clean || !res.switch_doped) {
      res.flagged = true;
      return;
    }
    const double dt_switch = *res.switch_doped - *res.switch_clean;
    // Between the two switches the doped cavity still sits on the lower branch.
    res.sign = dt_switch > 0.0 ? -1 : (dt_switch < 0.0 ? 1 : 0);
    res.estimate = dt_switch * out.ramp_rate / out.jump_slope;
  });
  for (const auto& s : out.shots) {
    if (s.flagged) {
      ++out.flagged;
    } else if (s.sign > 0) {
      ++out.positive;
    } else if (s.sign < 0) {
      ++out.negative;
    } else {
      ++out.zero;
    }
  }
  out.trace_t = Eigen::Map<Eigen::ArrayXd>(trace_t.data(), static_cast<Eigen::Index>(trace_t.size()));
  out.trace_clean = Eigen::Map<Eigen::ArrayXd>(trace_a.data(), static_cast<Eigen::Index>(trace_a.size()));
  out.trace_doped = Eigen::Map<Eigen::ArrayXd>(trace_b.data(), static_cast<Eigen::Index>(trace_b.size()));
  return out;
}

// ---------------------------------------------------------------------------

double saturable_crossing_time(double kappa_prime, double kappa_l, double i_sat, double i_init, double i_ref) {
  if (!(kappa_prime > 0.0) || !(kappa_l >= 0.0) || !(i_sat > 0.0) || !(i_init > 0.0) || !(i_ref > 0.0)) {
    throw DomainError("crossing time needs positive rates and intensities");
  }
  const double k = kappa_prime + kappa_l;
  return std::log(i_init / i_ref) / k +
         kappa_l / (k * kappa_prime) *
             std::log((kappa_prime * i_init + k * i_sat) / (kappa_prime * i_ref + k * i_sat));
}

double invert_crossing_time(double t, double kappa_l, double i_sat, double i_init, double i_ref) {
  // T is decreasing in kappa'; bracket on a log scale.
  auto f = [&](double log_k) { return saturable_crossing_time(std::exp(log_k), kappa_l, i_sat, i_init, i_ref) - t; };
  double lo = std::log(1e-12), hi = std::log(1e15);
  if (!(f(lo) > 0.0) || !(f(hi) < 0.0)) {
    std::ostringstream msg;
    msg << "crossing time " << t << " s outside the invertible range";
    throw NumericalError(msg.str());
  }
  return std::exp(bisect_root(f, lo, hi, 200));
}

double single_exponential_estimate(double t, double i_init, double i_ref, double kappa_c) {
  if (!(t > 0.0)) throw DomainError("crossing time must be positive");
  return std::log(i_init / i_ref) / (kC * t) - kappa_c / kC;
}

std::optional<double> first_crossing(const Eigen::ArrayXd& t, const Eigen::ArrayXd& record, double level) {
  for (Eigen::Index k = 1; k < record.size(); ++k) {
    if (record[k] > level) continue;
    const double a = record[k - 1], b = record[k];
    double frac;
    if (a > 0.0 && b > 0.0 && level > 0.0) {
      frac = std::log(a / level) / std::log(a / b);
    } else {
      frac = (a - level) / (a - b);
    }
    return t[k - 1] + std::clamp(frac, 0.0, 1.0) * (t[k] - t[k - 1]);
  }
  return std::nullopt;
}

double crds_fit_estimator(const Eigen::ArrayXd& t, const Eigen::ArrayXd& record, double fit_window, double kappa_c) {
  const double t0 = t.size() > 0 ? t[0] : 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double n = 0;
  for (Eigen::Index k = 0; k < t.size() && t[k] - t0 <= fit_window; ++k) {
    if (!(record[k] > 0.0)) break;
    const double x = t[k] - t0;
    const double y = std::log(record[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    n += 1.0;
  }
  if (n < 2.0) throw NumericalError("fewer than two positive samples in the fit window");
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return (-slope - kappa_c) / kC;
}

Eigen::ArrayXd distort_record(const Eigen::ArrayXd& t, const Eigen::ArrayXd& power, double g, double tau,
                              double photon_energy, KeyedRng* rng) {
  Eigen::ArrayXd out = power * (g * t).exp();
  if (tau > 0.0 && rng != nullptr) {
    for (Eigen::Index k = 0; k < out.size(); ++k) {
      out[k] += std::sqrt(photon_energy * std::max(out[k], 0.0) / tau) * rng->normal();
    }
  }
  return out;
}

namespace {

struct Record {
  Eigen::ArrayXd t;
  Eigen::ArrayXd intensity;
  Eigen::ArrayXd power;
};

Record record_run(const SdeConfig& c, double power_scale) {
  const Trajectory tr = integrate(c);
  return {tr.t, tr.intensity, tr.intensity * power_scale};
}

}  // namespace

RingdownResult estimator_comparison(const RingdownConfig& cfg) {
  const AbsorberCavity& cav = cfg.cavity;
  cav.validate();
  if (!(cfg.i_init > 0.0)) throw DomainError("ring-down needs a positive initial intensity");
  if (cfg.shots < 1) throw DomainError("ring-down needs at least one shot");
  if (cfg.g_drift_var.empty()) throw DomainError("ring-down needs at least one <g'^2> value");
  for (double g : cfg.g_drift_var) {
    if (!(g >= 0.0) || !std::isfinite(g)) throw DomainError("<g'^2> must be finite and non-negative");
  }

  RingdownResult out{};
  const double kappa_c = cav.geom.kappa_c();
  const double hw = cav.geom.photon_energy();
  const double power_scale = hw * kappa_c;
  out.alpha_true = cav.alpha_s;
  out.threshold = cfg.threshold > 0.0 ? cfg.threshold : cav.i_sat / 10.0;
  out.reference = cfg.reference > 0.0 ? cfg.reference : out.threshold;
  if (!(out.threshold < cfg.i_init)) throw DomainError("detection threshold must lie below the initial intensity");
  out.bad_times_level = kappa_c / (kC * std::sqrt(cav.i_sat));

  const double kappa_total = cav.kappa_linear() + cav.kappa_l;
  const double t_model = saturable_crossing_time(cav.kappa_linear(), cav.kappa_l, cav.i_sat, cfg.i_init, out.threshold);
  out.duration = cfg.duration > 0.0 ? cfg.duration : 1.5 * t_model + 20.0 / kappa_total;
  const double window = cfg.crds_window > 0.0 ? cfg.crds_window : 5.0 / kappa_c;

  SdeConfig sat;
  sat.geom = cav.geom;
  sat.medium = saturable_absorber(cav.kappa_l, cav.i_sat, cfg.q0);
  sat.trace.alpha_s = cav.alpha_s;
  sat.dt = cfg.dt_rate / sat.max_rate();
  sat.duration = out.duration;
  sat.record_stride = cfg.record_stride;
  sat.seed = cfg.seed;
  sat.e1_init = std::sqrt(cfg.i_init);
  sat.validate();
  out.dt = sat.dt;
  const double tau = cfg.shot_noise ? sat.dt * cfg.record_stride : 0.0;

  // Noise-free references at alpha_S = 0 with the same integrator and sampling.
  {
    SdeConfig ref = sat;
    ref.medium.q0 = 0.0;
    ref.trace.alpha_s = 0.0;
    const Record r = record_run(ref, power_scale);
    const auto t_ref = first_crossing(r.t, r.power, power_scale * out.threshold);
    if (!t_ref) throw NumericalError("noise-free reference ring-down never crossed the threshold");
    out.timing_offset = *t_ref - saturable_crossing_time(kappa_c, cav.kappa_l, cav.i_sat, cfg.i_init, out.reference);
  }
  SdeConfig empty = sat;
  empty.medium = MediumSpec{};
  empty.duration = window + sat.dt * cfg.record_stride;
  {
    SdeConfig ref = empty;
    ref.trace.alpha_s = 0.0;
    const Record r = record_run(ref, power_scale);
    out.crds_kappa_eff = kC * crds_fit_estimator(r.t, r.power, window, 0.0);
  }
  const Record empty_run = record_run(empty, power_scale);

  const std::size_t n_g = cfg.g_drift_var.size();
  const auto n_shots = static_cast<std::size_t>(cfg.shots);
  out.shots.assign(n_g, std::vector<RingdownShot>(n_shots));
  Record example;
  parallel_for(n_shots, cfg.threads, [&](std::size_t shot) {
    SdeConfig c = sat;
    c.shot = shot;
    const Record r = record_run(c, power_scale);
    if (shot == 0) example = r;
    const double z = KeyedRng(cfg.seed, shot, 2).normal();
    for (std::size_t gi = 0; gi < n_g; ++gi) {
      RingdownShot& s = out.shots[gi][shot];
      s.g = z * std::sqrt(cfg.g_drift_var[gi]);
      KeyedRng timing_rng(cfg.seed, shot, 16 + 2 * gi);
      KeyedRng crds_rng(cfg.seed, shot, 17 + 2 * gi);
      const Eigen::ArrayXd rec = distort_record(r.t, r.power, s.g, tau, hw, &timing_rng);
      s.switch_time = first_crossing(r.t, rec, power_scale * out.threshold);
      if (s.switch_time) {
        try {
          const double kp = invert_crossing_time(*s.switch_time - out.timing_offset, cav.kappa_l, cav.i_sat,
                                                 cfg.i_init, out.reference);
          s.timing_estimate = (kp - kappa_c) / kC;
        } catch (const NumericalError&) {
          s.flagged = true;
        }
      } else {
        s.flagged = true;
      }
      const Eigen::ArrayXd crds = distort_record(empty_run.t, empty_run.power, s.g, tau, hw, &crds_rng);
      s.crds_estimate = crds_fit_estimator(empty_run.t, crds, window, out.crds_kappa_eff);
    }
  });
  out.example_t = example.t;
  out.example_intensity = example.intensity;
  if (example.t.size() > 0) {
    KeyedRng rng(cfg.seed, 0, 16);
    out.example_record =
        distort_record(example.t, example.power, out.shots[0][0].g, tau, hw, &rng);
  }

  double prev_ratio = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t gi = 0; gi < n_g; ++gi) {
    EstimatorRow row{cfg.g_drift_var[gi], 0, 0, 0, 0, 0};
    double n_ok = 0;
    for (const auto& s : out.shots[gi]) {
      const double ec = s.crds_estimate - out.alpha_true;
      row.crds_rms += ec * ec;
      row.crds_bias += ec;
      if (s.flagged) {
        ++row.flagged;
        continue;
      }
      const double et = s.timing_estimate - out.alpha_true;
      row.timing_rms += et * et;
      row.timing_bias += et;
      n_ok += 1.0;
    }
    row.crds_rms = std::sqrt(row.crds_rms / static_cast<double>(n_shots));
    row.crds_bias /= static_cast<double>(n_shots);
    row.timing_rms = n_ok > 0 ? std::sqrt(row.timing_rms / n_ok) : std::numeric_limits<double>::quiet_NaN();
    row.timing_bias = n_ok > 0 ? row.timing_bias / n_ok : std::numeric_limits<double>::quiet_NaN();
    out.table.push_back(row);

    const double ratio = std::log(row.timing_rms / row.crds_rms);
    if (!out.crossover_g_var && ratio < 0.0 && gi > 0 && prev_ratio >= 0.0) {
      const double g0 = cfg.g_drift_var[gi - 1], g1 = cfg.g_drift_var[gi];
      if (g0 > 0.0) {
        const double w = prev_ratio / (prev_ratio - ratio);
        out.crossover_g_var = std::exp(std::log(g0) + w * (std::log(g1) - std::log(g0)));
      } else {
        out.crossover_g_var = g1;
      }
    }
    prev_ratio = ratio;
  }
  return out;
}

std::vector<RingdownShot> ringdown_experiment(const RingdownConfig& cfg) {
  RingdownConfig single = cfg;
  if (single.g_drift_var.size() > 1) single.g_drift_var.resize(1);
  return estimator_comparison(single).shots.front();
}

}  // namespace icas
