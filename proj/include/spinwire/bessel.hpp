#pragma once

// Bessel functions of the first kind, orders 0 and 1, for real arguments.
//
// |x| < 12: ascending power series, accumulated in long double so that the
//           cancellation between terms of size ~e^{|x|} stays below 1e-15.
// |x| >= 12: Hankel asymptotic expansion in amplitude/phase form,
//           J_nu(x) = sqrt(2/(pi x)) (P cos chi - Q sin chi),
//           chi = x - (nu/2 + 1/4) pi, truncated at its smallest term.
// Both branches are below 1e-12 absolute error at the switch.

#include <cmath>
#include <numbers>

namespace spinwire {

inline constexpr double kBesselSeriesLimit = 12.0;

namespace detail {

inline double bessel_series(double x, int order) {
  const long double half = static_cast<long double>(x) / 2.0L;
  const long double q = -half * half;
  long double term = (order == 0) ? 1.0L : half;
  long double sum = term;
  for (int m = 1; m < 200; ++m) {
    term *= q / (static_cast<long double>(m) * static_cast<long double>(m + order));
    sum += term;
    if (std::fabs(term) < 1e-22L * std::fabs(sum) + 1e-30L) {
      break;
    }
  }
  return static_cast<double>(sum);
}

inline double bessel_asymptotic(double x, int order) {
  const double mu = 4.0 * order * order;
  const double inv8x = 1.0 / (8.0 * x);
  double p = 0.0;
  double q = 0.0;
  double a = 1.0;  // a_n(nu) / x^n
  double previous = HUGE_VAL;
  for (int n = 0; n < 64; ++n) {
    if (n > 0) {
      const double odd = 2.0 * n - 1.0;
      a *= (mu - odd * odd) * inv8x / n;
    }
    const double size = std::fabs(a);
    if (size > previous) {
      break;
    }
    previous = size;
    // P collects even n, Q odd n, each with alternating sign (-1)^{floor(n/2)}.
    const double signed_a = ((n / 2) % 2 == 0) ? a : -a;
    if (n % 2 == 0) {
      p += signed_a;
    } else {
      q += signed_a;
    }
    if (size == 0.0 || size < 1e-18) {
      break;
    }
  }
  const double chi = x - (0.5 * order + 0.25) * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace detail

inline double bessel_j0(double x) {
  const double ax = std::fabs(x);
  return ax < kBesselSeriesLimit ? detail::bessel_series(ax, 0)
                                 : detail::bessel_asymptotic(ax, 0);
}

inline double bessel_j1(double x) {
  const double ax = std::fabs(x);
  const double value = ax < kBesselSeriesLimit ? detail::bessel_series(ax, 1)
                                               : detail::bessel_asymptotic(ax, 1);
  return x < 0.0 ? -value : value;
}

}  // namespace spinwire
