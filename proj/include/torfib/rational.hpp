#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace torfib {

using integer = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

inline rational make_rational(std::int64_t num, std::int64_t den = 1) { return rational(integer(num), integer(den)); }

/// "p" for integers, "p/q" otherwise.
inline std::string to_string(const rational& q) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

} // namespace torfib
