#pragma once

// Small scalar toolkit: adaptive Simpson quadrature, bisection, and a
// scan-then-bisect search for the first sign change of a function.

#include <cmath>
#include <optional>
#include <string>

#include "spinwire/error.hpp"

namespace spinwire {

namespace detail {

template <class F>
double simpson_step(const F& f, double a, double fa, double b, double fb, double m, double fm,
                    double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  // Past ~1e-10 relative, delta is rounding noise and halving h cannot help.
  const double noise_floor = 1e-10 * (std::fabs(left) + std::fabs(right));
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol || std::fabs(delta) <= noise_floor) {
    return left + right + delta / 15.0;
  }
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive composite Simpson with Richardson correction. `tol` is absolute,
// floored at a relative 1e-10 of each panel.
template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol, int max_depth = 48) {
  if (!(tol > 0.0)) {
    throw InvalidArgument("quadrature tolerance must be positive");
  }
  if (a == b) {
    return 0.0;
  }
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_step(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

// Requires f(lo) and f(hi) of opposite sign (or one of them zero).
template <class F>
double bisect(const F& f, double lo, double hi, double tol) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) {
    return lo;
  }
  if (fhi == 0.0) {
    return hi;
  }
  if ((flo < 0.0) == (fhi < 0.0)) {
    throw InvalidArgument("bisection bracket does not straddle a root");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {
      break;
    }
    const double fmid = f(mid);
    if (fmid == 0.0) {
      return mid;
    }
    if ((fmid < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// First root of f in (lo, hi], located on a uniform scan of `steps` cells.
template <class F>
std::optional<double> first_sign_change(const F& f, double lo, double hi, int steps, double tol) {
  const double h = (hi - lo) / steps;
  double x_prev = lo;
  double f_prev = f(lo);
  for (int i = 1; i <= steps; ++i) {
    const double x = lo + h * i;
    const double fx = f(x);
    if (fx == 0.0 || (fx < 0.0) != (f_prev < 0.0)) {
      return bisect(f, x_prev, x, tol);
    }
    x_prev = x;
    f_prev = fx;
  }
  return std::nullopt;
}

}  // namespace spinwire
