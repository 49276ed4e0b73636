#pragma once

// Origin-returning walks on the non-negative integers, binned by how many
// times they touch 0 strictly between the first and the last step.

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "spinwire/error.hpp"

namespace spinwire {

using BigInt = mpz_class;

// Counts for one step length n, keyed by intermediate zero-visit count k.
using WalkRow = std::map<unsigned, BigInt>;

struct WalkTable {
  std::map<std::pair<unsigned, unsigned>, BigInt> entries;  // (n, k) -> count

  const BigInt& at(unsigned n, unsigned k) const { return entries.at({n, k}); }
};

inline constexpr unsigned kDefaultEnumerationCap = 20;

namespace detail {

inline BigInt factorial(unsigned long m) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), m);
  return out;
}

inline void require_even_steps(long long n) {
  if (n < 2 || n % 2 != 0) {
    throw InvalidArgument("walk length must be even and >= 2, got " + std::to_string(n));
  }
}

}  // namespace detail

inline BigInt catalan(unsigned long m) {
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), 2 * m, m);
  out /= m + 1;
  return out;
}

// l(n, k) = (k+1) (n-k-2)! / ((n/2-k-1)! (n/2)!), zero outside 0 <= k <= n/2 - 1.
inline BigInt walk_count(long long n, long long k) {
  detail::require_even_steps(n);
  if (k < 0) {
    throw InvalidArgument("visit count k must be non-negative, got " + std::to_string(k));
  }
  const long long half = n / 2;
  if (half - k - 1 < 0) {
    return BigInt{0};
  }
  BigInt numer = detail::factorial(static_cast<unsigned long>(n - k - 2));
  numer *= static_cast<unsigned long>(k + 1);
  BigInt denom = detail::factorial(static_cast<unsigned long>(half - k - 1)) *
                 detail::factorial(static_cast<unsigned long>(half));
  BigInt out;
  mpz_divexact(out.get_mpz_t(), numer.get_mpz_t(), denom.get_mpz_t());
  return out;
}

namespace detail {

inline void enumerate_from(unsigned remaining, unsigned height, unsigned zeros,
                           std::map<unsigned, std::uint64_t>& bins) {
  if (remaining == 0) {
    if (height == 0) {
      ++bins[zeros];
    }
    return;
  }
  // Cannot get back to 0 in time.
  if (height > remaining) {
    return;
  }
  const bool intermediate = remaining > 1;
  enumerate_from(remaining - 1, height + 1, zeros, bins);
  if (height > 0) {
    const unsigned next_zeros = (height == 1 && intermediate) ? zeros + 1 : zeros;
    enumerate_from(remaining - 1, height - 1, next_zeros, bins);
  }
}

}  // namespace detail

// Exhaustive depth-first enumeration; exponential in n, hence the cap.
inline WalkRow enumerate_walks(long long n, unsigned cap = kDefaultEnumerationCap) {
  detail::require_even_steps(n);
  if (n > static_cast<long long>(cap)) {
    throw InvalidArgument("enumeration of n=" + std::to_string(n) + " exceeds cap " +
                          std::to_string(cap));
  }
  std::map<unsigned, std::uint64_t> bins;
  detail::enumerate_from(static_cast<unsigned>(n), 0, 0, bins);
  WalkRow row;
  for (const auto& [k, count] : bins) {
    row[k] = BigInt{static_cast<unsigned long>(count)};
  }
  return row;
}

// Rows for n = 2, 4, ..., n_max; every row carries k = 0 .. n_max/2 - 1,
// zeros included, so the table is rectangular.
inline WalkTable build_walk_table(long long n_max) {
  detail::require_even_steps(n_max);
  WalkTable table;
  const auto k_max = static_cast<unsigned>(n_max / 2 - 1);
  for (long long n = 2; n <= n_max; n += 2) {
    for (unsigned k = 0; k <= k_max; ++k) {
      table.entries[{static_cast<unsigned>(n), k}] = walk_count(n, k);
    }
  }
  return table;
}

}  // namespace spinwire
