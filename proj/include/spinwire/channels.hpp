#pragma once

// Reduced dynamics of the observed qubit and the scalar experiments built on
// alpha0: the exponentiality metric chi, the first inflection point, and the
// Bloch-vector length for a magnetized environment.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "spinwire/error.hpp"
#include "spinwire/numerics.hpp"
#include "spinwire/propagator.hpp"
#include "spinwire/series.hpp"

namespace spinwire {

struct BlochVector {
  double vx = 0.0;
  double vy = 0.0;
  double vz = 0.0;

  double norm_sq() const { return vx * vx + vy * vy + vz * vz; }
};

inline constexpr double kUnitTol = 1e-12;

// Maximally mixed wire: transverse components scale with alpha0, the
// longitudinal one with alpha0^2.
inline BlochVector apply_channel(const BlochVector& v, double alpha) {
  if (!(std::fabs(alpha) <= 1.0 + kUnitTol)) {
    throw InvalidArgument("channel parameter must satisfy |alpha| <= 1, got " +
                          std::to_string(alpha));
  }
  return {alpha * v.vx, alpha * v.vy, alpha * alpha * v.vz};
}

// ---------------------------------------------------------------------------
// chi = int_0^1 (a(x) - e^{-x})^2 dx

inline constexpr double kDefaultQuadTol = 1e-10;

template <class F>
double integrated_deviation(const F& curve, double quad_tol = kDefaultQuadTol) {
  return adaptive_simpson(
      [&](double x) {
        const double d = curve(x) - std::exp(-x);
        return d * d;
      },
      0.0, 1.0, quad_tol);
}

struct ChiValue {
  double chi = 0.0;
  double tail_estimate = 0.0;       // series error estimate at x = 1
  bool truncation_dominates = false;  // tail_estimate > quad_tol
};

// Time in units where K / K0^2 = 1, i.e. K0 = ratio and K = ratio^2; the
// curve is the order-`order` truncated series.
inline ChiValue chi_metric(double ratio, int order = kDefaultSeriesOrder,
                           double quad_tol = kDefaultQuadTol) {
  if (!(ratio > 0.0) || !std::isfinite(ratio)) {
    throw InvalidArgument("chi_metric: ratio K/K0 must be positive");
  }
  if (order < 2) {
    throw InvalidArgument("chi_metric: series order must be >= 2");
  }
  const Rational k0_sq = exact_rational(ratio * ratio);
  const SeriesCoefficients series = build_series(k0_sq, k0_sq * k0_sq, order);
  ChiValue out;
  out.chi = integrated_deviation([&](double x) { return evaluate_series(series, x).value; },
                                 quad_tol);
  out.tail_estimate = evaluate_series(series, 1.0).error_estimate;
  out.truncation_dominates = out.tail_estimate > quad_tol;
  return out;
}

struct ChiScan {
  std::vector<double> ratios;
  std::vector<double> chi;
  std::vector<bool> truncation_dominates;
  int series_order = kDefaultSeriesOrder;
  double quadrature_tolerance = kDefaultQuadTol;
};

inline ChiScan chi_scan(const std::vector<double>& ratios, int order = kDefaultSeriesOrder,
                        double quad_tol = kDefaultQuadTol) {
  ChiScan out;
  out.series_order = order;
  out.quadrature_tolerance = quad_tol;
  for (double r : ratios) {
    const ChiValue v = chi_metric(r, order, quad_tol);
    out.ratios.push_back(r);
    out.chi.push_back(v.chi);
    out.truncation_dominates.push_back(v.truncation_dominates);
  }
  return out;
}

// ---------------------------------------------------------------------------
// First inflection of alpha0((K/K0^2) x).

struct InflectionPoint {
  double numeric_x0 = 0.0;
  double truncated_x0 = 0.0;
};

// Root of the second derivative truncated at x^2:
//   x0 = sqrt(2) (K^2/K0^2 + K^4/K0^4)^{-1/2}.
inline double truncated_inflection(double k0, double k) {
  const double r2 = (k / k0) * (k / k0);
  return std::numbers::sqrt2 / std::sqrt(r2 + r2 * r2);
}

inline InflectionPoint inflection_point(double k0, double k, int order = kDefaultSeriesOrder) {
  if (!(k0 > 0.0) || !(k > 0.0)) {
    throw InvalidArgument("inflection_point: couplings must be positive");
  }
  if (order < 2) {
    throw InvalidArgument("inflection_point: series order must be >= 2");
  }
  const SeriesCoefficients series = build_series_from_couplings(k0, k, order);
  const double scale = k / (k0 * k0);
  auto curvature = [&](double x) {
    return scale * scale * evaluate_series_second_derivative(series, scale * x);
  };
  InflectionPoint out;
  out.truncated_x0 = truncated_inflection(k0, k);
  constexpr double kWindow = 3.0;
  const double cell = std::min(kWindow / 4096.0, out.truncated_x0 / 64.0);
  const int steps = static_cast<int>(std::ceil(kWindow / cell));
  const auto root = first_sign_change(curvature, 0.0, kWindow, steps, 1e-14);
  if (!root) {
    throw ComputationError("inflection_point: no sign change of the second derivative in [0, 3] "
                           "for k0=" + std::to_string(k0) + ", k=" + std::to_string(k));
  }
  out.numeric_x0 = *root;
  return out;
}

// ---------------------------------------------------------------------------
// Magnetized wire, initial state |+>|00...>. Only the single-excitation
// sector moves: the coherence carries amplitude alpha0 and the excitation
// survives on site 0 with probability alpha0^2.

inline BlochVector magnetized_bloch_vector(double alpha) {
  return {alpha, 0.0, 1.0 - alpha * alpha};
}

inline double magnetized_bloch_length_sq(double alpha) {
  return magnetized_bloch_vector(alpha).norm_sq();
}

struct BlochSample {
  double t = 0.0;
  double v_sq = 0.0;
};

inline std::vector<BlochSample> magnetized_bloch_trace(const ChainSpec& spec,
                                                       const std::vector<double>& times) {
  require_time_grid(times);
  const SpectralPropagator prop(spec);
  std::vector<BlochSample> out;
  out.reserve(times.size());
  for (double t : times) {
    out.push_back({t, magnetized_bloch_length_sq(prop.alpha(t))});
  }
  return out;
}

}  // namespace spinwire
