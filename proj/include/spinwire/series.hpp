#pragma once

// Maclaurin series of the auto-fidelity alpha0(t) = tr(X0(t) X0(0)) with
// exact rational coefficients. The coefficient of t^{2j} is a weighted sum
// over origin-returning walks of 2j steps: each of the k intermediate returns
// to the observed site (plus the final one) costs a plug factor K0^2, every
// other step pair costs a wire factor K^2.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "spinwire/error.hpp"
#include "spinwire/walks.hpp"

namespace spinwire {

using Rational = mpq_class;

inline constexpr int kDefaultSeriesOrder = 20;

struct SeriesCoefficients {
  Rational k0_sq;
  Rational k_sq;
  std::vector<Rational> coeffs;  // coeffs[j] multiplies t^{2j}

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

struct SeriesValue {
  double value = 0.0;
  double error_estimate = 0.0;
};

// Exact conversion of a finite double.
inline Rational exact_rational(double x) {
  if (!std::isfinite(x)) {
    throw InvalidArgument("non-finite value cannot be made rational");
  }
  return Rational{x};
}

namespace detail {

inline Rational rational_pow(const Rational& base, unsigned long e) {
  Rational out{1};
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), e);
  out.canonicalize();
  return out;
}

inline BigInt factorial_z(unsigned long m) { return detail::factorial(m); }

}  // namespace detail

// c_{2j} = (-1)^j / (2j)! * sum_{k=0}^{j-1} l(2j, k) K0^{2(k+1)} K^{2(j-k-1)}.
inline Rational series_coefficient(int j, const Rational& k0_sq, const Rational& k_sq) {
  if (j < 0) {
    throw InvalidArgument("series index must be non-negative, got " + std::to_string(j));
  }
  if (j == 0) {
    return Rational{1};
  }
  Rational sum{0};
  for (int k = 0; k <= j - 1; ++k) {
    const BigInt walks = walk_count(2LL * j, k);
    sum += Rational{walks} * detail::rational_pow(k0_sq, static_cast<unsigned long>(k + 1)) *
           detail::rational_pow(k_sq, static_cast<unsigned long>(j - k - 1));
  }
  sum /= Rational{detail::factorial_z(static_cast<unsigned long>(2 * j))};
  return (j % 2 == 0) ? sum : Rational{-sum};
}

// The same coefficient through the terminating Gauss series
//   2F1(1-j, 2; 2-2j; z),  z = (K0/K)^2,
// scaled by (-1)^j K^{2j} / (2j)! * z * (2j-2)! / ((j-1)! j!).
inline Rational hypergeometric_coefficient(int j, const Rational& ratio_sq,
                                           const Rational& k_sq = Rational{1}) {
  if (j < 1) {
    throw InvalidArgument("hypergeometric form needs j >= 1, got " + std::to_string(j));
  }
  if (sgn(ratio_sq) <= 0) {
    throw InvalidArgument("coupling ratio must be positive");
  }
  // Sum term by term: t_{s+1} = t_s * (a+s)(b+s) / ((c+s)(s+1)) * z.
  const long a = 1 - j;
  const long b = 2;
  const long c = 2 - 2 * j;
  Rational term{1};
  Rational hyp{0};
  for (long s = 0; s <= j - 1; ++s) {
    hyp += term;
    if (s == j - 1) {
      break;
    }
    term *= Rational{(a + s) * (b + s)};
    term /= Rational{(c + s) * (s + 1)};
    term *= ratio_sq;
  }
  Rational pref = detail::rational_pow(k_sq, static_cast<unsigned long>(j)) * ratio_sq;
  pref *= Rational{detail::factorial_z(static_cast<unsigned long>(2 * j - 2))};
  pref /= Rational{detail::factorial_z(static_cast<unsigned long>(2 * j)) *
                   detail::factorial_z(static_cast<unsigned long>(j - 1)) *
                   detail::factorial_z(static_cast<unsigned long>(j))};
  Rational out = pref * hyp;
  return (j % 2 == 0) ? out : Rational{-out};
}

inline SeriesCoefficients build_series(const Rational& k0_sq, const Rational& k_sq,
                                       int order = kDefaultSeriesOrder) {
  if (order < 0) {
    throw InvalidArgument("series order must be non-negative, got " + std::to_string(order));
  }
  if (sgn(k0_sq) < 0 || sgn(k_sq) < 0) {
    throw InvalidArgument("squared couplings must be non-negative");
  }
  SeriesCoefficients out{k0_sq, k_sq, {}};
  out.coeffs.reserve(static_cast<std::size_t>(order) + 1);
  for (int j = 0; j <= order; ++j) {
    out.coeffs.push_back(series_coefficient(j, k0_sq, k_sq));
  }
  return out;
}

inline SeriesCoefficients build_series_from_couplings(double k0, double k,
                                                      int order = kDefaultSeriesOrder) {
  if (!(k0 >= 0.0) || !(k >= 0.0)) {
    throw InvalidArgument("couplings must be non-negative");
  }
  return build_series(exact_rational(k0 * k0), exact_rational(k * k), order);
}

// Horner in t^2. The error estimate is twice the magnitude of the last
// included term, a heuristic for a tail that alternates in sign.
inline SeriesValue evaluate_series(const SeriesCoefficients& series, double t) {
  if (series.coeffs.empty()) {
    throw InvalidArgument("empty series");
  }
  const double u = t * t;
  double acc = 0.0;
  for (auto it = series.coeffs.rbegin(); it != series.coeffs.rend(); ++it) {
    acc = acc * u + it->get_d();
  }
  const auto last = static_cast<double>(series.order());
  const double tail = std::abs(series.coeffs.back().get_d()) * std::pow(u, last);
  return {acc, series.order() == 0 ? 0.0 : 2.0 * tail};
}

// Term-by-term second derivative in t.
inline double evaluate_series_second_derivative(const SeriesCoefficients& series, double t) {
  const double u = t * t;
  double acc = 0.0;
  for (int j = series.order(); j >= 1; --j) {
    const double weight = static_cast<double>(2 * j) * static_cast<double>(2 * j - 1);
    acc = acc * u + weight * series.coeffs[static_cast<std::size_t>(j)].get_d();
  }
  return acc;
}

// tr(Z0(t) Z0(0)) in terms of tr(X0(t) X0(0)).
inline double alpha_z(double alpha_x) { return alpha_x * alpha_x; }

}  // namespace spinwire
