#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace dagbench {

/// Formats a real number the way answers and inference steps print them:
/// fixed notation rounded to 8 decimal places, trailing zeros trimmed, and at
/// least one digit after the point (2 -> "2.0", sqrt(2) -> "1.41421356").
inline std::string fmt_number(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.8f", v);
  std::string s(buf);
  std::size_t last = s.find_last_not_of('0');
  if (s[last] == '.') ++last;  // keep one zero after the point
  s.erase(last + 1);
  if (s == "-0.0") s = "0.0";
  return s;
}

/// Integer-style formatting for prompt values and equation coefficients.
inline std::string fmt_int(double v) {
  return std::to_string(static_cast<long long>(std::llround(v)));
}

/// Coefficient formatting in narration: integral values print as integers,
/// anything else falls back to fmt_number.
inline std::string fmt_coeff(double v) {
  const double r = std::round(v);
  if (std::abs(v - r) < 1e-12 && std::abs(v) < 1e15) return fmt_int(v);
  return fmt_number(v);
}

}  // namespace dagbench
