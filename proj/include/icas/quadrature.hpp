#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include <Eigen/Core>

namespace icas {

/// Nodes, weights and log-integrand values of a converged composite rule.
struct NodeRule {
  Eigen::ArrayXd nodes;
  Eigen::ArrayXd weights;
  Eigen::ArrayXd log_values;
  Eigen::Array3d integral = Eigen::Array3d::Zero();
  Eigen::Array3d error = Eigen::Array3d::Zero();
  int panels = 0;
  bool converged = false;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo, hi;
  std::array<double, 15> x, lv;
  Eigen::Array3d kronrod, error;
  double score;
};

template <class LogF>
Panel evaluate_panel(LogF& log_f, double lo, double hi, double center, double scale) {
  Panel p{lo, hi, {}, {}, Eigen::Array3d::Zero(), Eigen::Array3d::Zero(), 0.0};
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  Eigen::Array3d gauss = Eigen::Array3d::Zero();
  auto accumulate = [&](int slot, double x, double wk, double wg) {
    const double lv = log_f(x);
    const double v = std::exp(lv);
    const double u = (x - center) / scale;
    const Eigen::Array3d basis(v, v * u, v * u * u);
    p.x[slot] = x;
    p.lv[slot] = lv;
    p.kronrod += wk * basis;
    gauss += wg * basis;
  };
  accumulate(14, mid, kWgk[7], kWg[3]);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double wg = (j % 2 == 1) ? kWg[j / 2] : 0.0;
    accumulate(2 * j, mid - dx, kWgk[j], wg);
    accumulate(2 * j + 1, mid + dx, kWgk[j], wg);
  }
  p.kronrod *= half;
  gauss *= half;
  p.error = (p.kronrod - gauss).abs();
  return p;
}

}  // namespace detail

/// Adaptive Gauss-Kronrod (G7/K15) integration of exp(log_f) on [lo, hi].
///
/// Refinement is driven jointly by the mass and the first two moments about
/// `center` in units of `scale`, so the returned node set integrates low-order
/// moments to `rel_tol` as well as the mass. The worst panel is bisected until
/// every component meets its tolerance or `max_panels` is reached.
template <class LogF>
NodeRule adaptive_gauss_kronrod(LogF&& log_f, double lo, double hi, double center, double scale,
                                double rel_tol, int max_panels, int initial_panels = 16) {
  using detail::Panel;
  auto cmp = [](const Panel& a, const Panel& b) { return a.score < b.score; };
  std::vector<Panel> heap;
  heap.reserve(static_cast<std::size_t>(max_panels));
  Eigen::Array3d total = Eigen::Array3d::Zero();
  Eigen::Array3d err = Eigen::Array3d::Zero();

  auto tolerance = [&](const Eigen::Array3d& t) {
    const double t0 = std::abs(t[0]);
    const double t2 = std::abs(t[2]);
    return Eigen::Array3d(rel_tol * t0, rel_tol * std::sqrt(t0 * t2) + 1e-300, rel_tol * t2 + 1e-300);
  };
  auto score = [&](Panel& p, const Eigen::Array3d& tol) { p.score = (p.error / tol.max(1e-300)).maxCoeff(); };

  const double step = (hi - lo) / initial_panels;
  for (int i = 0; i < initial_panels; ++i) {
    const double a = lo + i * step;
    const double b = (i + 1 == initial_panels) ? hi : lo + (i + 1) * step;
    heap.push_back(detail::evaluate_panel(log_f, a, b, center, scale));
    total += heap.back().kronrod;
    err += heap.back().error;
  }
  bool converged = false;
  while (true) {
    const Eigen::Array3d tol = tolerance(total);
    if ((err <= tol).all()) {
      converged = true;
      break;
    }
    if (static_cast<int>(heap.size()) >= max_panels) break;
    for (auto& p : heap) score(p, tol);
    std::make_heap(heap.begin(), heap.end(), cmp);
    std::pop_heap(heap.begin(), heap.end(), cmp);
    const Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.lo + worst.hi);
    Panel left = detail::evaluate_panel(log_f, worst.lo, mid, center, scale);
    Panel right = detail::evaluate_panel(log_f, mid, worst.hi, center, scale);
    total += left.kronrod + right.kronrod - worst.kronrod;
    err += left.error + right.error - worst.error;
    heap.push_back(std::move(left));
    heap.push_back(std::move(right));
  }

  std::sort(heap.begin(), heap.end(), [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
  NodeRule rule;
  const auto n = static_cast<Eigen::Index>(heap.size() * 15);
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.log_values.resize(n);
  Eigen::Index k = 0;
  for (const Panel& p : heap) {
    const double half = 0.5 * (p.hi - p.lo);
    for (int s = 0; s < 15; ++s, ++k) {
      const int j = s == 14 ? 7 : s / 2;
      rule.nodes[k] = p.x[s];
      rule.weights[k] = half * detail::kWgk[j];
      rule.log_values[k] = p.lv[s];
    }
  }
  // Re-sum from nodes so integral and node rule agree exactly.
  rule.integral = Eigen::Array3d::Zero();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double v = rule.weights[i] * std::exp(rule.log_values[i]);
    const double u = (rule.nodes[i] - center) / scale;
    rule.integral += Eigen::Array3d(v, v * u, v * u * u);
  }
  rule.error = err;
  rule.panels = static_cast<int>(heap.size());
  rule.converged = converged;
  return rule;
}

}  // namespace icas
