#pragma once

// Two observed qubits prepared in a singlet, each plugged into its own wire.
// The correlation tensor stays diagonal,
//   T = diag(-a_A a_B, -a_A a_B, -a_A^2 a_B^2),
// and sum_ij T_ij^2 > 1 certifies entanglement.

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "spinwire/numerics.hpp"
#include "spinwire/propagator.hpp"

namespace spinwire {

inline constexpr double kCrossingTol = 1e-9;

struct WitnessTrace {
  std::vector<double> times;
  std::vector<double> witness;
  std::vector<std::pair<double, double>> entangled_intervals;
  std::optional<double> death_time;
  std::vector<double> rebirth_times;
};

inline double singlet_witness_value(double alpha_a, double alpha_b) {
  const double p = alpha_a * alpha_b;
  const double p2 = p * p;
  return 2.0 * p2 + p2 * p2;
}

// Intervals are detected on the grid and their ends refined by bisection;
// an excursion shorter than one grid cell can be missed.
inline WitnessTrace singlet_witness(const ChainSpec& spec_a, const ChainSpec& spec_b,
                                    const std::vector<double>& times) {
  require_time_grid(times);
  const SpectralPropagator prop_a(spec_a);
  const SpectralPropagator prop_b(spec_b);
  auto excess = [&](double t) {
    return singlet_witness_value(prop_a.alpha(t), prop_b.alpha(t)) - 1.0;
  };

  WitnessTrace out;
  out.times = times;
  out.witness.reserve(times.size());
  for (double t : times) {
    out.witness.push_back(singlet_witness_value(prop_a.alpha(t), prop_b.alpha(t)));
  }
  if (times.empty()) {
    return out;
  }

  std::optional<double> open_start;
  if (out.witness.front() > 1.0) {
    open_start = times.front();
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    const bool before = out.witness[i - 1] > 1.0;
    const bool now = out.witness[i] > 1.0;
    if (before == now) {
      continue;
    }
    const double crossing = bisect(excess, times[i - 1], times[i], kCrossingTol);
    if (now) {
      open_start = crossing;
    } else {
      out.entangled_intervals.emplace_back(*open_start, crossing);
      open_start.reset();
    }
  }
  const bool still_open = open_start.has_value();
  if (still_open) {
    out.entangled_intervals.emplace_back(*open_start, times.back());
  }

  const std::size_t closed = out.entangled_intervals.size() - (still_open ? 1 : 0);
  if (closed >= 1) {
    out.death_time = out.entangled_intervals.front().second;
  }
  for (std::size_t i = 1; i < out.entangled_intervals.size(); ++i) {
    out.rebirth_times.push_back(out.entangled_intervals[i].first);
  }
  return out;
}

}  // namespace spinwire
