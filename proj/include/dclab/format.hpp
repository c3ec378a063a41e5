#pragma once

#include <cstdio>
#include <string>

namespace dclab {

/// Decimal with 17 significant digits, enough for a lossless double round trip.
inline std::string format_double(double v) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(n));
}

}  // namespace dclab
