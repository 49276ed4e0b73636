#pragma once

// Survival probability of a state spread over finitely many incommensurate
// modes, P(t) = (1/2m) (m + sum_i cos(2 w_i t)). It comes back close to 1 at
// irregular times but never reaches it for t > 0.

#include <cmath>
#include <optional>
#include <vector>

#include "spinwire/error.hpp"
#include "spinwire/numerics.hpp"
#include "spinwire/trace.hpp"

namespace spinwire {

struct RecurrenceTrace {
  std::vector<double> times;
  std::vector<double> probability;
  // First return above the threshold after P has dropped to or below it.
  std::optional<double> first_exceedance;
};

inline double survival_probability(const std::vector<double>& freqs, double t) {
  double acc = static_cast<double>(freqs.size());
  for (double w : freqs) {
    acc += std::cos(2.0 * w * t);
  }
  return acc / (2.0 * static_cast<double>(freqs.size()));
}

inline RecurrenceTrace recurrence_demo(const std::vector<double>& freqs,
                                       const std::vector<double>& times, double threshold) {
  if (freqs.size() < 2 || freqs.size() > 8) {
    throw InvalidArgument("recurrence demo takes between 2 and 8 frequencies");
  }
  require_time_grid(times);
  RecurrenceTrace out;
  out.times = times;
  out.probability.reserve(times.size());
  bool dipped = false;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double p = survival_probability(freqs, times[i]);
    out.probability.push_back(p);
    if (p <= threshold) {
      dipped = true;
    } else if (dipped && !out.first_exceedance && i > 0) {
      out.first_exceedance = bisect(
          [&](double t) { return survival_probability(freqs, t) - threshold; }, times[i - 1],
          times[i], 1e-12);
    }
  }
  return out;
}

}  // namespace spinwire
