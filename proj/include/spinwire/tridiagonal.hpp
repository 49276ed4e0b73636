#pragma once

// Real symmetric tridiagonal eigenproblem by implicit-shift QL.
//
// Only the first row of the eigenvector matrix is accumulated: the rotations
// act on columns, so tracking one row is O(n) per sweep and the full
// decomposition costs O(n^2) instead of O(n^3). The squared first components
// are the spectral weights of the first basis vector.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "spinwire/error.hpp"

namespace spinwire {

struct SymTridiagonal {
  std::vector<double> diagonal;      // size n
  std::vector<double> off_diagonal;  // size n - 1

  std::size_t size() const { return diagonal.size(); }
};

struct SpectralWeights {
  std::vector<double> eigenvalues;  // ascending
  std::vector<double> weights;      // |<e_0|v_m>|^2, aligned with eigenvalues
};

namespace detail {

// sqrt(a^2 + b^2) without overflow; cheaper than std::hypot.
inline double pythag(double a, double b) {
  const double fa = std::fabs(a);
  const double fb = std::fabs(b);
  if (fa > fb) {
    const double q = fb / fa;
    return fa * std::sqrt(1.0 + q * q);
  }
  if (fb == 0.0) {
    return 0.0;
  }
  const double q = fa / fb;
  return fb * std::sqrt(1.0 + q * q);
}

}  // namespace detail

inline SpectralWeights first_row_spectrum(const SymTridiagonal& h, int max_iterations = 60) {
  const std::size_t n = h.size();
  if (n == 0 || h.off_diagonal.size() + 1 != n) {
    throw InvalidArgument("tridiagonal matrix has inconsistent dimensions");
  }
  std::vector<double> d = h.diagonal;
  std::vector<double> e(n, 0.0);
  std::copy(h.off_diagonal.begin(), h.off_diagonal.end(), e.begin());
  std::vector<double> z(n, 0.0);
  z[0] = 1.0;

  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m = l;
    while (true) {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= eps * dd) {
          break;
        }
      }
      if (m == l) {
        break;
      }
      if (iter++ == max_iterations) {
        throw ComputationError("tridiagonal QL did not converge for eigenvalue " +
                               std::to_string(l) + " of " + std::to_string(n));
      }
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = detail::pythag(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool deflated = false;
      for (std::size_t i = m; i-- > l;) {
        double f = s * e[i];
        const double b = c * e[i];
        r = detail::pythag(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        f = z[i + 1];
        z[i + 1] = s * z[i] + c * f;
        z[i] = c * z[i] - s * f;
      }
      if (deflated) {
        continue;
      }
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  SpectralWeights out;
  out.eigenvalues.reserve(n);
  out.weights.reserve(n);
  for (std::size_t idx : order) {
    out.eigenvalues.push_back(d[idx]);
    out.weights.push_back(z[idx] * z[idx]);
  }
  return out;
}

}  // namespace spinwire
