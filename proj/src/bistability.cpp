#include "icas/bistability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "icas/errors.hpp"

namespace icas {
namespace {

// Work in u = I / I_sat and s = S / (I_sat kappa'^2) with S = P0 kappa_C / hbar omega.
// Steady state: g(u) = u (u + k)^2 / (1 + u)^2 = s, k = 1 + kappa_L / kappa'.
double g_of(double u, double k) {
  const double r = (u + k) / (1.0 + u);
  return u * r * r;
}

double g_slope(double u, double k) {
  // d/du [u (u+k)^2 (1+u)^-2]
  const double r = (u + k) / (1.0 + u);
  return r * r + 2.0 * u * r * (1.0 - k) / ((1.0 + u) * (1.0 + u));
}

// Monic cubic u^3 + (2k - s) u^2 + (k^2 - 2s) u - s via companion eigenvalues.
std::vector<double> companion_guesses(double k, double s) {
  Eigen::Matrix3d c = Eigen::Matrix3d::Zero();
  c(1, 0) = 1.0;
  c(2, 1) = 1.0;
  c(0, 2) = s;
  c(1, 2) = -(k * k - 2.0 * s);
  c(2, 2) = -(2.0 * k - s);
  Eigen::EigenSolver<Eigen::Matrix3d> es(c, false);
  std::vector<double> out;
  for (int i = 0; i < 3; ++i) out.push_back(es.eigenvalues()[i].real());
  return out;
}

// Safeguarded Newton on g(u) - s inside [lo, hi] where g - s changes sign.
double polish(double guess, double lo, double hi, double k, double s) {
  double f_lo = g_of(lo, k) - s;
  if (f_lo == 0.0) return lo;
  double u = std::clamp(guess, lo, hi);
  for (int it = 0; it < 200; ++it) {
    const double f = g_of(u, k) - s;
    if (f == 0.0) return u;
    if ((f < 0.0) == (f_lo < 0.0)) {
      lo = u;
      f_lo = f;
    } else {
      hi = u;
    }
    const double d = g_slope(u, k);
    double next = u - f / d;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    if (std::abs(next - u) <= 2.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(u)) ||
        hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(hi))) {
      return next;
    }
    u = next;
  }
  return u;
}

struct Turning {
  double u_plus;
  double u_minus;
};

std::optional<Turning> turning_u(double ratio) {
  // ratio = kappa_L / kappa'. Roots of u^2 - (r-2) u + (r+1) = 0.
  const double disc = ratio * (ratio - 8.0);
  if (disc < 0.0) return std::nullopt;
  const double u_plus = 0.5 * (ratio - 2.0 + std::sqrt(disc));
  return Turning{u_plus, (ratio + 1.0) / u_plus};
}

}  // namespace

double saturated_loss(double intensity, double kappa_l, double i_sat) {
  if (!(intensity >= 0.0)) throw DomainError("intensity must be non-negative");
  if (std::isinf(intensity)) return 0.0;
  return kappa_l / (1.0 + intensity / i_sat);
}

void AbsorberCavity::validate() const {
  geom.validate();
  if (!(kappa_l >= 0.0) || !std::isfinite(kappa_l)) throw DomainError("kappa_L must be non-negative");
  if (!(i_sat > 0.0) || !std::isfinite(i_sat)) throw DomainError("I_sat must be positive");
  if (!(alpha_s >= 0.0)) throw DomainError("alpha_S must be non-negative");
}

double AbsorberCavity::kappa_linear() const { return geom.kappa_c() + constants::speed_of_light * alpha_s; }

double AbsorberCavity::input_power(double intensity) const {
  const double rate = kappa_linear() + saturated_loss(intensity, kappa_l, i_sat);
  return geom.photon_energy() * intensity * rate * rate / geom.kappa_c();
}

double AbsorberCavity::input_power_slope(double intensity) const {
  const double kp = kappa_linear();
  const double k = 1.0 + kappa_l / kp;
  return geom.photon_energy() * kp * kp / geom.kappa_c() * g_slope(intensity / i_sat, k);
}

std::vector<SteadyRoot> steady_intensities(double p0, const AbsorberCavity& cav) {
  if (!(p0 >= 0.0) || !std::isfinite(p0)) throw DomainError("P0 must be finite and non-negative");
  cav.validate();
  const double kp = cav.kappa_linear();
  const double k = 1.0 + cav.kappa_l / kp;
  const double s = p0 * cav.geom.kappa_c() / (cav.geom.photon_energy() * cav.i_sat * kp * kp);
  if (s == 0.0) return {{0.0, true}};

  const std::vector<double> guesses = companion_guesses(k, s);
  auto nearest = [&](double lo, double hi) {
    double best = 0.5 * (lo + hi);
    double dist = std::numeric_limits<double>::infinity();
    for (double g : guesses) {
      const double d = g < lo ? lo - g : (g > hi ? g - hi : 0.0);
      if (d < dist) {
        dist = d;
        best = g;
      }
    }
    return best;
  };

  // g is increasing on [0, u-], decreasing on [u-, u+], increasing beyond; g(u) >= u since k >= 1.
  std::vector<double> u_roots;
  const auto tp = turning_u(cav.kappa_l / kp);
  if (!tp || tp->u_plus == tp->u_minus) {
    u_roots.push_back(polish(nearest(0.0, s), 0.0, s, k, s));
  } else {
    const double g_max = g_of(tp->u_minus, k);
    const double g_min = g_of(tp->u_plus, k);
    if (s <= g_max) u_roots.push_back(polish(nearest(0.0, tp->u_minus), 0.0, tp->u_minus, k, s));
    if (s >= g_min && s <= g_max) {
      u_roots.push_back(polish(nearest(tp->u_minus, tp->u_plus), tp->u_minus, tp->u_plus, k, s));
    }
    if (s >= g_min) {
      const double hi = std::max(s, tp->u_plus);
      u_roots.push_back(polish(nearest(tp->u_plus, hi), tp->u_plus, hi, k, s));
    }
  }
  std::sort(u_roots.begin(), u_roots.end());
  u_roots.erase(std::unique(u_roots.begin(), u_roots.end()), u_roots.end());

  std::vector<SteadyRoot> out;
  for (std::size_t i = 0; i < u_roots.size(); ++i) {
    out.push_back({u_roots[i] * cav.i_sat, !(u_roots.size() == 3 && i == 1)});
  }
  return out;
}

std::optional<TurningPoints> turning_points(const AbsorberCavity& cav) {
  cav.validate();
  const double kp = cav.kappa_linear();
  const auto tp = turning_u(cav.kappa_l / kp);
  if (!tp) return std::nullopt;
  TurningPoints out{};
  out.i_plus = tp->u_plus * cav.i_sat;
  out.i_minus = tp->u_minus * cav.i_sat;
  out.p0_plus = cav.input_power(out.i_plus);
  out.p0_minus = cav.input_power(out.i_minus);
  out.x = std::sqrt(std::max(0.0, cav.kappa_l / (8.0 * kp) - 1.0));
  out.approx_plus = cav.i_sat * (3.0 + 4.0 * out.x);
  out.approx_minus = cav.i_sat * (3.0 - 4.0 * out.x);
  return out;
}

std::optional<double> jump_up_power(const AbsorberCavity& cav) {
  const auto tp = turning_points(cav);
  if (!tp || tp->i_plus == tp->i_minus) return std::nullopt;
  return tp->p0_minus;
}

BistabilityCurve hysteresis_sweep(const Eigen::ArrayXd& p0_grid, const AbsorberCavity& cav) {
  const Eigen::Index n = p0_grid.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(p0_grid[i] >= 0.0) || (i > 0 && !(p0_grid[i] > p0_grid[i - 1]))) {
      throw DomainError("P0 grid must be non-negative and strictly increasing");
    }
  }
  BistabilityCurve c;
  c.p0_grid = p0_grid;
  c.turning = turning_points(cav);
  c.x_param = c.turning ? c.turning->x : std::numeric_limits<double>::quiet_NaN();
  c.roots.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) c.roots.push_back(steady_intensities(p0_grid[i], cav));

  // A single root above the lower turning point sits on the upper branch.
  const double split = c.turning ? 0.5 * (c.turning->i_plus + c.turning->i_minus) : 0.0;
  c.up.resize(n);
  c.down.resize(n);
  bool high = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& r = c.roots[static_cast<std::size_t>(i)];
    if (!high && c.turning && r.size() == 1 && r.front().intensity > split) {
      high = true;
      c.jump_up_index = i;
    }
    c.up[i] = high ? r.back().intensity : r.front().intensity;
  }
  high = true;
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    const auto& r = c.roots[static_cast<std::size_t>(i)];
    if (high && c.turning && r.size() == 1 && r.front().intensity < split) {
      high = false;
      c.jump_down_index = i;
    }
    if (!c.turning) high = false;
    c.down[i] = high ? r.back().intensity : r.front().intensity;
  }
  return c;
}

}  // namespace icas
