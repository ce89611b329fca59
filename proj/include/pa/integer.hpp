#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace pa {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(abs(a), abs(b));
}

// lcm(0, b) is defined as |b| so that folding from zero works.
inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0) return abs(b);
  if (b == 0) return abs(a);
  return abs(a / gcd(a, b) * b);
}

// Rounds towards negative infinity; divisor must be non-zero.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Integer ceil_div(const Integer& a, const Integer& b) {
  return -floor_div(-a, b);
}

// Least non-negative residue of a modulo p (p > 0).
inline Integer mod_floor(const Integer& a, const Integer& p) {
  Integer r = a % p;
  if (r < 0) r += p;
  return r;
}

inline Integer pow(const Integer& base, std::uint64_t exp) {
  Integer result = 1;
  Integer b = base;
  while (exp != 0) {
    if (exp & 1U) result *= b;
    exp >>= 1U;
    if (exp != 0) b *= b;
  }
  return result;
}

inline std::string to_string(const Integer& a) { return a.str(); }

}  // namespace pa
