#pragma once

#include <gmpxx.h>

#include <string>

namespace n32 {

using Rational = mpq_class;

/// "numerator/denominator" (denominator always printed, "0/1" for zero).
inline std::string to_fraction_string(const Rational& q)
{
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Accepts "n", "n/d" and "-n/d". Throws std::invalid_argument otherwise.
Rational parse_rational(const std::string& text);

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double v) { return v; }

} // namespace n32
