#pragma once

// alpha0(t) from the single-particle reduction of the xx chain.
//
// The Heisenberg evolution of (X0, Z0Y1, Z0Z1X2, ...) is exp(tM) with M
// skew-symmetric and tridiagonal, off-diagonal magnitudes (K0, K, K, ...).
// Conjugating by diag(1, i, -1, -i, ...) turns M into i*h with h the real
// symmetric tridiagonal matrix of the same magnitudes and zero diagonal; the
// (0,0) entry is unchanged, so
//
//   alpha0(t) = sum_m w_m cos(lambda_m t),
//
// with lambda_m the eigenvalues of h and w_m the squared first components of
// its eigenvectors. The semi-infinite chain is truncated to n_sites; sites
// outside the light cone (speed <= 2K) cannot influence alpha0.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "spinwire/error.hpp"
#include "spinwire/trace.hpp"
#include "spinwire/tridiagonal.hpp"

namespace spinwire {

struct ChainSpec {
  double k0 = 1.0;           // plug coupling
  double k = 1.0;            // wire coupling
  std::size_t n_sites = 2;   // observed site plus n_sites - 1 chain sites

  void validate() const {
    if (!std::isfinite(k0) || !std::isfinite(k) || k0 < 0.0 || k < 0.0) {
      throw InvalidArgument("couplings must be finite and non-negative: " + describe());
    }
    if (n_sites < 2) {
      throw InvalidArgument("chain needs at least 2 sites: " + describe());
    }
  }

  std::string describe() const {
    std::ostringstream os;
    os.precision(17);
    os << "ChainSpec{k0=" << k0 << ", k=" << k << ", n_sites=" << n_sites << "}";
    return os.str();
  }
};

inline constexpr std::size_t kLightConeBuffer = 50;
inline constexpr int kMaxDoublings = 6;
inline constexpr double kDefaultTruncationTol = 1e-10;
inline constexpr double kNormalizationTol = 1e-12;

inline SymTridiagonal build_generator(const ChainSpec& spec) {
  spec.validate();
  SymTridiagonal h;
  h.diagonal.assign(spec.n_sites, 0.0);
  h.off_diagonal.assign(spec.n_sites - 1, spec.k);
  h.off_diagonal[0] = spec.k0;
  return h;
}

// One eigensolve per spec; evaluation at any t is O(n_sites).
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const ChainSpec& spec) : spec_(spec) {
    try {
      spectrum_ = first_row_spectrum(build_generator(spec));
    } catch (const ComputationError& err) {
      throw ComputationError(std::string(err.what()) + " for " + spec.describe());
    }
    double sum = 0.0;
    for (double w : spectrum_.weights) {
      sum += w;
    }
    weight_sum_ = sum;
    if (std::fabs(sum - 1.0) > kNormalizationTol) {
      throw ComputationError("spectral weights sum to " + std::to_string(sum) + " for " +
                             spec.describe());
    }
  }

  const ChainSpec& spec() const { return spec_; }
  const SpectralWeights& spectrum() const { return spectrum_; }
  double weight_sum() const { return weight_sum_; }

  double alpha(double t) const {
    double acc = 0.0;
    for (std::size_t m = 0; m < spectrum_.weights.size(); ++m) {
      acc += spectrum_.weights[m] * std::cos(spectrum_.eigenvalues[m] * t);
    }
    return acc;
  }

  // Vanishes by chiral symmetry of h; exposed for checking.
  double odd_part(double t) const {
    double acc = 0.0;
    for (std::size_t m = 0; m < spectrum_.weights.size(); ++m) {
      acc += spectrum_.weights[m] * std::sin(spectrum_.eigenvalues[m] * t);
    }
    return acc;
  }

  std::vector<double> alpha(const std::vector<double>& times) const {
    std::vector<double> out;
    out.reserve(times.size());
    for (double t : times) {
      out.push_back(alpha(t));
    }
    return out;
  }

 private:
  ChainSpec spec_;
  SpectralWeights spectrum_;
  double weight_sum_ = 0.0;
};

namespace detail {

inline double max_abs_difference(const SpectralPropagator& a, const SpectralPropagator& b,
                                 const std::vector<double>& times) {
  double worst = 0.0;
  for (double t : times) {
    worst = std::max(worst, std::fabs(a.alpha(t) - b.alpha(t)));
  }
  return worst;
}

inline ChainSpec doubled(ChainSpec spec) {
  spec.n_sites *= 2;
  return spec;
}

}  // namespace detail

// Light-cone estimate ceil(2 k t_max) + buffer, certified by comparing
// against twice as many sites on a probe grid over [0, t_max]; doubles on
// failure.
inline std::size_t choose_chain_length(double k0, double k, double t_max,
                                       double tol = kDefaultTruncationTol,
                                       std::size_t buffer = kLightConeBuffer) {
  if (k == 0.0) {
    return 2;
  }
  if (!(k > 0.0) || !std::isfinite(k) || !(k0 >= 0.0) || !std::isfinite(k0)) {
    throw InvalidArgument("choose_chain_length: couplings must be finite, k > 0");
  }
  if (!(t_max > 0.0) || !std::isfinite(t_max)) {
    throw InvalidArgument("choose_chain_length: t_max must be positive");
  }
  if (!(tol > 0.0 && tol < 1.0)) {
    throw InvalidArgument("choose_chain_length: tol must lie in (0, 1)");
  }
  constexpr int kProbePoints = 64;
  std::vector<double> probes(kProbePoints);
  for (int i = 0; i < kProbePoints; ++i) {
    probes[static_cast<std::size_t>(i)] = t_max * (i + 1) / kProbePoints;
  }
  ChainSpec spec{k0, k, static_cast<std::size_t>(std::ceil(2.0 * k * t_max)) + buffer};
  SpectralPropagator current(spec);
  for (int doubling = 0; doubling <= kMaxDoublings; ++doubling) {
    SpectralPropagator wider(detail::doubled(current.spec()));
    if (detail::max_abs_difference(current, wider, probes) < tol) {
      return current.spec().n_sites;
    }
    current = std::move(wider);
  }
  std::ostringstream os;
  os.precision(17);
  os << "choose_chain_length did not certify after " << kMaxDoublings
     << " doublings (k=" << k << ", t_max=" << t_max << ", tol=" << tol << ")";
  throw ComputationError(os.str());
}

// Samples alpha0 on `times` for a fixed chain length. The reported truncation
// bound is the largest change on the grid when the chain is doubled.
inline AlphaTrace alpha_trace(const ChainSpec& spec, const std::vector<double>& times) {
  require_time_grid(times);
  const SpectralPropagator base(spec);
  const SpectralPropagator wider(detail::doubled(spec));
  AlphaTrace out;
  out.method = AlphaMethod::matrix;
  out.times = times;
  out.values = base.alpha(times);
  out.truncation_error_bound = detail::max_abs_difference(base, wider, times);
  return out;
}

inline ChainSpec auto_chain(double k0, double k, double t_max, double tol = kDefaultTruncationTol) {
  const std::size_t n = t_max > 0.0 ? choose_chain_length(k0, k, t_max, tol) : 2;
  ChainSpec spec{k0, k, n};
  spec.validate();
  return spec;
}

}  // namespace spinwire
