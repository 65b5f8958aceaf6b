#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace khom {

// Exact arbitrary-precision integers and rationals. Expression templates are
// switched off so values behave like ordinary value types with auto, std::max
// and friends.
using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(Int a, Int b) {
  a = abs_int(a);
  b = abs_int(b);
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline Int lcm_int(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return abs_int(a / gcd_int(a, b) * b);
}

// g = gcd(a,b) = x*a + y*b.  gcd(0,0) = 0 with x = y = 0.
inline Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
  if (b == 0) {
    if (a == 0) {
      x = 0;
      y = 0;
      return 0;
    }
    x = a < 0 ? -1 : 1;
    y = 0;
    return abs_int(a);
  }
  Int x1, y1;
  Int g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

// floor division / modulo (remainder always in [0, |b|)).
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

inline Int floor_mod(const Int& a, const Int& b) { return a - floor_div(a, b) * b; }

// Fractional part in [0,1); the canonical representative of a rational mod 1.
inline Rat frac_mod_one(const Rat& r) {
  Int fl = floor_div(numerator(r), denominator(r));
  return r - Rat(fl);
}

inline std::string to_string(const Int& a) { return a.str(); }

}  // namespace khom
