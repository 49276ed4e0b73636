#pragma once

#include <string_view>
#include <vector>

#include "spinwire/error.hpp"

namespace spinwire {

enum class AlphaMethod { series, matrix, closed_form };

inline std::string_view to_string(AlphaMethod m) {
  switch (m) {
    case AlphaMethod::series:
      return "series";
    case AlphaMethod::matrix:
      return "matrix";
    case AlphaMethod::closed_form:
      return "closed";
  }
  return "unknown";
}

// Samples of alpha0(t) on an increasing time grid.
struct AlphaTrace {
  std::vector<double> times;
  std::vector<double> values;
  AlphaMethod method = AlphaMethod::matrix;
  double truncation_error_bound = 0.0;
};

inline std::vector<double> uniform_grid(double t_max, int steps) {
  if (steps < 1) {
    throw InvalidArgument("grid needs at least one sample");
  }
  if (!(t_max >= 0.0)) {
    throw InvalidArgument("grid end time must be non-negative");
  }
  std::vector<double> out(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    out[static_cast<std::size_t>(i)] = steps == 1 ? 0.0 : t_max * i / (steps - 1);
  }
  return out;
}

inline void require_time_grid(const std::vector<double>& times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0)) {
      throw InvalidArgument("time grid must be non-negative");
    }
    if (i > 0 && !(times[i] > times[i - 1])) {
      throw InvalidArgument("time grid must be strictly increasing");
    }
  }
}

}  // namespace spinwire
