#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace hyperq {

/// Exact rational with arbitrary-precision numerator and denominator.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Always "p/q" with q > 0, also for integers ("2/1").
inline std::string to_fraction_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

/// "p" for integers, "p/q" otherwise.
inline std::string to_compact_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return to_fraction_string(r);
}

}  // namespace hyperq
