#include "icas/fokker_planck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "icas/constants.hpp"
#include "icas/errors.hpp"
#include "icas/golden_section.hpp"
#include "icas/parallel.hpp"
#include "icas/quadrature.hpp"

namespace icas {
namespace {

constexpr double kBesselSwitch = 30.0;
const double kLog4 = std::log(4.0);

template <class F>
double golden_max(F&& f, double lo, double hi) {
  return golden_section_minimize([&](double x) { return -f(x); }, lo, hi, 1e-15).x;
}

// Point in [lo, hi] where f crosses `level`; f(lo) >= level > f(hi) or the reverse.
template <class F>
double bisect_level(F&& f, double lo, double hi, double level) {
  const bool lo_above = f(lo) >= level;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if ((f(mid) >= level) == lo_above) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// u - log(1 + u) without cancellation for small u.
double u_minus_log1p(double u) {
  if (std::abs(u) < 0.01) {
    double term = -u;
    double sum = 0.0;
    for (int k = 2; k < 14; ++k) {
      term *= -u;
      sum += term / k;
    }
    return sum;
  }
  return u - std::log1p(u);
}

}  // namespace

void FPParams::validate() const {
  if (!(std::isfinite(drive) && drive >= 0.0)) throw DomainError("drive amplitude must be non-negative");
  if (!(std::isfinite(kappa_prime) && kappa_prime > 0.0)) throw DomainError("kappa' must be positive");
  if (!(std::isfinite(kappa_g) && kappa_g >= 0.0)) throw DomainError("kappa_G must be non-negative");
  if (!(std::isfinite(i_sat) && i_sat > 0.0)) throw DomainError("I_sat must be positive");
  if (!(std::isfinite(q) && q > 0.0)) throw DomainError("Q must be positive");
}

ThresholdParams threshold_params(const FPParams& p) {
  p.validate();
  if (!(p.kappa_g > 0.0)) throw DomainError("threshold notation requires kappa_G > 0");
  ThresholdParams t{};
  t.gamma_prime = 0.5 * (p.kappa_g - p.kappa_prime);
  t.beta_prime = p.kappa_g / (2.0 * p.i_sat);
  t.q_prime = p.q;
  t.a = t.gamma_prime / std::sqrt(t.beta_prime * t.q_prime);
  t.eta0 = 4.0 / std::sqrt(std::numbers::pi) * std::sqrt(p.i_sat);
  return t;
}

FPParams drive_free_at_pump(double a, double kappa_prime, double i_sat) {
  const double root = std::sqrt(i_sat);
  if (!(2.0 * a < root)) throw DomainError("pump parameter too large for the saturation intensity");
  FPParams p;
  p.drive = 0.0;
  p.kappa_prime = kappa_prime;
  p.kappa_g = kappa_prime / (1.0 - 2.0 * a / root);
  p.i_sat = i_sat;
  p.q = 2.0 * p.kappa_g;
  p.validate();
  return p;
}

double log_bessel_mb0_series(double x) {
  if (x < 0.0) x = -x;
  // sum_k (x^2/4)^k / (k!)^2, summed in scaled form to stay finite up to x ~ 700.
  const double y = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 2000; ++k) {
    term *= y / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return kLog4 + std::log(sum);
}

double log_bessel_mb0_asymptotic(double x, int correction_terms) {
  // I0(x) ~ e^x / sqrt(2 pi x) * sum_k prod_{j<=k} (2j-1)^2 / (k! (8x)^k)
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= correction_terms; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= odd * odd / (k * 8.0 * x);
    sum += term;
  }
  return x - 0.5 * std::log(x) + 0.5 * std::log(8.0 / std::numbers::pi) + std::log(sum);
}

double log_bessel_mb0(double x) {
  x = std::abs(x);
  return x <= kBesselSwitch ? log_bessel_mb0_series(x) : log_bessel_mb0_asymptotic(x);
}

double log_density(double intensity, const FPParams& p) {
  if (!(intensity >= 0.0)) throw DomainError("intensity must be non-negative");
  // -k' I + kG Is ln(1 + I/Is) = (kG - k') I - kG Is (u - ln(1 + u)), u = I/Is
  const double saturation =
      p.kappa_g > 0.0 ? p.kappa_g * p.i_sat * u_minus_log1p(intensity / p.i_sat) : 0.0;
  const double exponent = ((p.kappa_g - p.kappa_prime) * intensity - saturation) / (4.0 * p.q);
  const double bessel = p.drive > 0.0 ? log_bessel_mb0(p.drive * std::sqrt(intensity) / p.q) : kLog4;
  return exponent + bessel;
}

SteadyStateDistribution SteadyStateDistribution::compute(const FPParams& p, const QuadratureOptions& opts) {
  p.validate();
  auto f = [&p](double i) { return icas::log_density(i, p); };

  // Bracket the mode on a geometric grid, then refine.
  const double scale0 = 4.0 * p.q / p.kappa_prime;
  const double classical = std::pow(2.0 * p.drive / p.kappa_prime, 2);
  const double limit = 1e6 * std::max({p.i_sat, scale0, classical});
  double best_i = 0.0;
  double best_f = f(0.0);
  double prev = 0.0;
  double bracket_lo = 0.0, bracket_hi = 0.0, beyond = 0.0;
  double x = scale0 * 1e-6;
  while (true) {
    if (x > limit) {
      std::ostringstream msg;
      msg << "steady-state density does not decay: domain grew beyond " << limit
          << " photons (drive=" << p.drive << ", kappa'=" << p.kappa_prime << ", kappa_G=" << p.kappa_g
          << ", I_sat=" << p.i_sat << ", Q=" << p.q << ")";
      throw NumericalError(msg.str());
    }
    const double fx = f(x);
    if (fx > best_f) {
      best_f = fx;
      best_i = x;
      bracket_lo = prev;
    }
    if (x > best_i && fx < best_f - opts.drop_nats - 5.0) {
      beyond = x;
      break;
    }
    prev = x;
    x *= 2.0;
  }
  bracket_hi = best_i > 0.0 ? 2.0 * best_i : scale0 * 1e-6;
  double mode = best_i;
  if (best_i > 0.0) {
    mode = golden_max(f, bracket_lo, bracket_hi);
  } else {
    const double cand = golden_max(f, 0.0, bracket_hi);
    if (f(cand) > f(0.0)) mode = cand;
  }
  const double f_max = std::max(f(mode), best_f);
  const double level = f_max - opts.drop_nats;
  const double upper = bisect_level(f, mode, beyond, level);
  const double lower = f(0.0) >= level ? 0.0 : bisect_level(f, 0.0, mode, level);

  // Rounding in the exponent limits attainable accuracy when its terms are large.
  const double at = std::max(mode, upper);
  const double magnitude = (std::abs(p.kappa_g - p.kappa_prime) * at + p.kappa_g * at * at / p.i_sat) / (4.0 * p.q) +
                           (p.drive > 0.0 ? p.drive * std::sqrt(at) / p.q : 0.0) + std::abs(f_max);
  const double tol = std::max(opts.rel_tol, 64.0 * std::numeric_limits<double>::epsilon() * magnitude);
  const double width = std::max(upper - lower, std::numeric_limits<double>::min());
  NodeRule rule = adaptive_gauss_kronrod([&](double i) { return f(i) - f_max; }, lower, upper, mode, width, tol,
                                         opts.max_panels);
  if (!rule.converged) {
    std::ostringstream msg;
    msg << "quadrature did not converge within " << opts.max_panels << " panels on [" << lower << ", " << upper
        << "], error estimate " << rule.error[0] / rule.integral[0];
    throw NumericalError(msg.str());
  }

  // Sort nodes so the grid is increasing.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(rule.nodes.size()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return rule.nodes[a] < rule.nodes[b]; });

  SteadyStateDistribution d;
  d.params_ = p;
  const auto n = rule.nodes.size();
  d.grid_.resize(n);
  d.log_density_.resize(n);
  Eigen::ArrayXd log_w(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto j = order[static_cast<std::size_t>(k)];
    d.grid_[k] = rule.nodes[j];
    d.log_density_[k] = rule.log_values[j] + f_max;
    log_w[k] = std::log(rule.weights[j]) + rule.log_values[j];
  }
  // log-sum-exp normalization
  const double m = log_w.maxCoeff();
  const double log_norm = m + std::log((log_w - m).exp().sum());
  d.probabilities_ = (log_w - log_norm).exp();
  d.mode_ = mode;
  d.lower_cut_ = lower;
  d.upper_cut_ = upper;
  d.panels_ = rule.panels;
  d.mass_error_ = rule.error[0] / rule.integral[0];
  d.mean_ = (d.probabilities_ * d.grid_).sum();
  return d;
}

double SteadyStateDistribution::moment(int n) const {
  if (n == 0) return 1.0;
  return (probabilities_ * grid_.pow(static_cast<double>(n))).sum();
}

double SteadyStateDistribution::variance() const {
  return (probabilities_ * (grid_ - mean_).square()).sum();
}

double SteadyStateDistribution::power_covariance(int n) const {
  if (n == 1) return variance();
  const double mn = moment(n);
  return (probabilities_ * (grid_.pow(static_cast<double>(n)) - mn) * (grid_ - mean_)).sum();
}

Eigen::ArrayXd moments(const FPParams& p, int n_max) {
  if (n_max < 1) throw DomainError("n_max must be at least 1");
  const auto dist = SteadyStateDistribution::compute(p);
  Eigen::ArrayXd out(n_max);
  for (int n = 1; n <= n_max; ++n) out[n - 1] = dist.moment(n);
  return out;
}

double moment_derivative(const SteadyStateDistribution& dist, int n) {
  if (n < 1) throw DomainError("moment order must be at least 1");
  return -dist.power_covariance(n) / (4.0 * dist.params().q);
}

double moment_derivative(const FPParams& p, int n) {
  return moment_derivative(SteadyStateDistribution::compute(p), n);
}

double responsivity(const SteadyStateDistribution& dist) {
  if (!(dist.mean() > 0.0)) throw DomainError("responsivity requires <I> > 0");
  return -constants::speed_of_light / (4.0 * dist.params().q) * dist.variance() / dist.mean();
}

double responsivity(const FPParams& p) { return responsivity(SteadyStateDistribution::compute(p)); }

double normalized_threshold_responsivity(const SteadyStateDistribution& dist) {
  const ThresholdParams t = threshold_params(dist.params());
  // a depends on kappa' only through gamma', da/dkappa' = -1 / (2 sqrt(beta' q')).
  return 2.0 * std::sqrt(t.beta_prime * t.q_prime) * dist.variance() / (4.0 * t.q_prime * dist.mean());
}

namespace {

FPParams cell_params(const FPParams& fixed, double drive, double gain) {
  FPParams p = fixed;
  p.drive = drive;
  p.kappa_g = gain;
  if (!(fixed.q > 0.0)) p.q = 2.0 * gain;
  return p;
}

}  // namespace

ResponsivityMap responsivity_map(const Eigen::ArrayXd& drive, const Eigen::ArrayXd& gain, const FPParams& fixed,
                                 int threads) {
  if (drive.size() == 0 || gain.size() == 0) throw ConfigError("responsivity map grids must be non-empty");
  ResponsivityMap map;
  map.drive = drive;
  map.gain = gain;
  map.abs_responsivity.setConstant(gain.size(), drive.size(), std::numeric_limits<double>::quiet_NaN());
  map.mean_intensity = map.abs_responsivity;
  const auto rows = static_cast<std::size_t>(gain.size());
  const auto cols = static_cast<std::size_t>(drive.size());
  std::vector<std::string> errors(rows * cols);
  parallel_for(rows * cols, threads, [&](std::size_t k) {
    const auto r = static_cast<Eigen::Index>(k / cols);
    const auto c = static_cast<Eigen::Index>(k % cols);
    try {
      const auto dist = SteadyStateDistribution::compute(cell_params(fixed, drive[c], gain[r]));
      map.abs_responsivity(r, c) = std::abs(responsivity(dist));
      map.mean_intensity(r, c) = dist.mean();
    } catch (const std::exception& e) {
      errors[k] = e.what();
      if (errors[k].empty()) errors[k] = "unknown failure";
    }
  });
  for (std::size_t k = 0; k < errors.size(); ++k) {
    if (!errors[k].empty()) {
      map.failures.push_back({static_cast<Eigen::Index>(k / cols), static_cast<Eigen::Index>(k % cols), errors[k]});
    }
  }
  return map;
}

GainSlice gain_slice(double drive, const Eigen::ArrayXd& gain, const FPParams& fixed, int threads) {
  const Eigen::ArrayXd drive_grid = Eigen::ArrayXd::Constant(1, drive);
  const ResponsivityMap map = responsivity_map(drive_grid, gain, fixed, threads);
  GainSlice s;
  s.drive = drive;
  s.gain = gain;
  s.abs_responsivity = map.abs_responsivity.col(0).array();
  s.mean_intensity = map.mean_intensity.col(0).array();
  s.classical_intensity = (fixed.i_sat * (gain / fixed.kappa_prime - 1.0)).max(0.0);
  const Eigen::ArrayXd gamma = 0.5 * (gain - fixed.kappa_prime);
  s.no_emission_limit = (gamma > 0.0).select(constants::speed_of_light / (2.0 * gamma),
                                              std::numeric_limits<double>::quiet_NaN());
  return s;
}

}  // namespace icas
