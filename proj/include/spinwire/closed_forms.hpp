#pragma once

// Analytic alpha0(t) for the solvable coupling ratios, and a peak-envelope
// fit used to read off long-time power laws.
//
//   K = 0          : cos(K0 t)
//   K0 = sqrt(2) K : J0(2 K t)
//   K0 = K         : J1(2 K t) / (K t)

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "spinwire/bessel.hpp"
#include "spinwire/error.hpp"
#include "spinwire/trace.hpp"

namespace spinwire {

enum class CaseKind { wire_off, sqrt2_ratio, equal_couplings, generic };

struct SpecialCase {
  CaseKind kind = CaseKind::generic;
  double k0 = 0.0;
  double k = 0.0;
};

inline constexpr double kRatioMatchTol = 1e-12;

inline SpecialCase classify_couplings(double k0, double k) {
  if (!std::isfinite(k0) || !std::isfinite(k) || k0 < 0.0 || k < 0.0) {
    throw InvalidArgument("couplings must be finite and non-negative");
  }
  SpecialCase out{CaseKind::generic, k0, k};
  if (k == 0.0) {
    out.kind = CaseKind::wire_off;
  } else if (std::fabs(k0 - std::numbers::sqrt2 * k) <= kRatioMatchTol * k0) {
    out.kind = CaseKind::sqrt2_ratio;
  } else if (std::fabs(k0 - k) <= kRatioMatchTol * k0) {
    out.kind = CaseKind::equal_couplings;
  }
  return out;
}

inline double alpha_closed(const SpecialCase& c, double t) {
  switch (c.kind) {
    case CaseKind::wire_off:
      return std::cos(c.k0 * t);
    case CaseKind::sqrt2_ratio:
      return bessel_j0(2.0 * c.k * t);
    case CaseKind::equal_couplings: {
      const double x = c.k * t;
      // Removable singularity; the next term is x^4 / 12.
      if (std::fabs(x) < 1e-6) {
        return 1.0 - 0.5 * x * x;
      }
      return bessel_j1(2.0 * x) / x;
    }
    case CaseKind::generic:
      break;
  }
  throw InvalidArgument("no closed form for k0=" + std::to_string(c.k0) +
                        ", k=" + std::to_string(c.k) + "; use the matrix propagator");
}

inline AlphaTrace closed_trace(const SpecialCase& c, const std::vector<double>& times) {
  require_time_grid(times);
  AlphaTrace out;
  out.method = AlphaMethod::closed_form;
  out.times = times;
  out.values.reserve(times.size());
  for (double t : times) {
    out.values.push_back(alpha_closed(c, t));
  }
  return out;
}

// Slope of log|peak| against log t over the local maxima of |alpha0| inside
// [t_min, t_max]. Peak heights are refined by a parabola through the three
// samples around each discrete maximum.
inline double envelope_exponent(const AlphaTrace& trace, double t_min, double t_max) {
  const auto& t = trace.times;
  const auto& v = trace.values;
  if (t.size() != v.size()) {
    throw InvalidArgument("trace times and values differ in length");
  }
  std::vector<double> log_t;
  std::vector<double> log_peak;
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    if (t[i] < t_min || t[i] > t_max) {
      continue;
    }
    const double left = std::fabs(v[i - 1]);
    const double mid = std::fabs(v[i]);
    const double right = std::fabs(v[i + 1]);
    if (!(mid >= left && mid > right) || mid == 0.0) {
      continue;
    }
    double peak_t = t[i];
    double peak = mid;
    const double curvature = left - 2.0 * mid + right;
    if (curvature < 0.0) {
      const double h = 0.5 * (t[i + 1] - t[i - 1]);
      const double offset = 0.5 * (left - right) / curvature;
      peak_t = t[i] + offset * h;
      peak = mid - 0.25 * (left - right) * offset;
    }
    log_t.push_back(std::log(peak_t));
    log_peak.push_back(std::log(peak));
  }
  if (log_t.size() < 4) {
    throw ComputationError("envelope fit needs at least 4 peaks in [" + std::to_string(t_min) +
                           ", " + std::to_string(t_max) + "], found " +
                           std::to_string(log_t.size()));
  }
  const auto n = static_cast<double>(log_t.size());
  double sx = 0.0;
  double sy = 0.0;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < log_t.size(); ++i) {
    sx += log_t[i];
    sy += log_peak[i];
    sxx += log_t[i] * log_t[i];
    sxy += log_t[i] * log_peak[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace spinwire
