#pragma once

#include <cmath>
#include <utility>

namespace icas {

struct ScalarMinimum {
  double x;
  double value;
  int evaluations;
};

/// Golden-section search for the minimum of a unimodal `f` on [lo, hi].
/// Stops when the bracket is narrower than rel_tol * max(|lo|, |hi|) or after
/// max_iterations. Returns the better of the two interior probes.
template <class F>
ScalarMinimum golden_section_minimize(F&& f, double lo, double hi, double rel_tol = 1e-10,
                                      int max_iterations = 500) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  if (hi < lo) std::swap(lo, hi);
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  int evals = 2;
  for (int i = 0; i < max_iterations; ++i) {
    if (hi - lo <= rel_tol * std::max(std::abs(lo), std::abs(hi))) break;
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
    ++evals;
  }
  return fc <= fd ? ScalarMinimum{c, fc, evals} : ScalarMinimum{d, fd, evals};
}

/// Bisection for a sign change of `f` on [lo, hi]. Requires f(lo) and f(hi)
/// of opposite sign (or zero).
template <class F>
double bisect_root(F&& f, double lo, double hi, int iterations = 200) {
  double flo = f(lo);
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace icas
