#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace spinwire {

inline constexpr std::string_view kToolName = "spinwire";
inline constexpr std::string_view kToolVersion = "0.1.0";

// Shortest round-trip-safe rendering at 17 significant digits, independent of
// the C locale.
inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (res.ec != std::errc{}) {
    return "nan";
  }
  return std::string(buf, res.ptr);
}

}  // namespace spinwire
