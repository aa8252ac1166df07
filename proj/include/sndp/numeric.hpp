#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <type_traits>

#include <boost/multiprecision/gmp.hpp>

namespace sndp {

// Exact arithmetic used by the oracles and by exact certification.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <class T>
inline constexpr bool is_inexact_v = std::is_floating_point_v<T>;

inline double to_double(double v) { return v; }
inline double to_double(std::int64_t v) { return static_cast<double>(v); }
inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline bool is_integral_value(double v) { return std::isfinite(v) && std::floor(v) == v; }
inline bool is_integral_value(std::int64_t) { return true; }
inline bool is_integral_value(const Rational& q) {
  return boost::multiprecision::denominator(q) == 1;
}

template <class T>
T convert_from_double(double v) {
  if constexpr (std::is_same_v<T, std::int64_t>) {
    return static_cast<std::int64_t>(v);
  } else {
    return T(v);
  }
}

}  // namespace sndp
