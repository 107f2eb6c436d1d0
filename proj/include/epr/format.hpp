#pragma once

#include <cstdio>
#include <string>

namespace epr {

// 12-significant-digit decimal rendering used by every CSV and table writer,
// so that emitted values re-parse to the same string.
inline std::string format_sig(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::string(buf);
}

}  // namespace epr
