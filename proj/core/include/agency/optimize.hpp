#pragma once

#include <cmath>
#include <cstddef>

namespace agency {

// Golden-section maximization of a unimodal function on [lo, hi], bracketed
// first on a coarse grid. Ties resolve toward the smaller argument.
template <typename F>
double maximize_unimodal(F&& f, double lo, double hi, double xtol = 1e-11,
                         std::size_t coarse_points = 33) {
  if (!(hi > lo)) return lo;

  // Coarse bracket around the best grid point.
  const double step = (hi - lo) / static_cast<double>(coarse_points - 1);
  double best_x = lo;
  double best_f = f(lo);
  for (std::size_t i = 1; i < coarse_points; ++i) {
    const double x = (i + 1 == coarse_points) ? hi : lo + step * static_cast<double>(i);
    const double fx = f(x);
    if (fx > best_f) {
      best_f = fx;
      best_x = x;
    }
  }
  double a = best_x - step;
  double b = best_x + step;
  if (a < lo) a = lo;
  if (b > hi) b = hi;

  constexpr double inv_phi = 0.61803398874989484820;
  double c = b - (b - a) * inv_phi;
  double d = a + (b - a) * inv_phi;
  double fc = f(c);
  double fd = f(d);
  while (b - a > xtol) {
    if (fc >= fd) {  // >= keeps the left interval on ties
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * inv_phi;
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * inv_phi;
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// First root of g on [lo, hi] by bisection, assuming g(lo) and g(hi) have
// opposite signs. Returns the midpoint of the final bracket.
template <typename G>
double bisect_root(G&& g, double lo, double hi, double xtol = 1e-13,
                   int max_iter = 200) {
  double flo = g(lo);
  for (int i = 0; i < max_iter && hi - lo > xtol; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = g(mid);
    if ((flo <= 0.0) == (fmid <= 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace agency
