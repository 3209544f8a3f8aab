#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>

namespace kvol {

using Rational = boost::rational<std::int64_t>;

inline Rational rat(std::int64_t num, std::int64_t den = 1) { return Rational(num, den); }

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline long double to_long_double(const Rational& r) {
  return static_cast<long double>(r.numerator()) / static_cast<long double>(r.denominator());
}

// Sign of a*b - c*d without overflow for 64-bit inputs.
inline int compare_products(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  const __int128 lhs = static_cast<__int128>(a) * b;
  const __int128 rhs = static_cast<__int128>(c) * d;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

}  // namespace kvol
