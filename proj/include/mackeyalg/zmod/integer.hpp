#ifndef MACKEYALG_ZMOD_INTEGER_HPP
#define MACKEYALG_ZMOD_INTEGER_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <string>

namespace mackeyalg::zmod {

/// Arbitrary-precision integer used by every exact computation in the library.
using Integer = boost::multiprecision::cpp_int;

inline Integer abs(const Integer& a) { return a < 0 ? Integer(-a) : a; }

/// Quotient rounded toward negative infinity.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  Integer r = a - q * b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

/// Representative of a modulo |m| in [0, |m|). m == 0 leaves a unchanged.
inline Integer mod_floor(const Integer& a, const Integer& m) {
  if (m == 0) return a;
  Integer mm = abs(m);
  Integer r = a % mm;
  if (r < 0) r += mm;
  return r;
}

inline Integer gcd(Integer a, Integer b) {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    Integer t = a % b;
    a = std::move(b);
    b = std::move(t);
  }
  return a;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

struct ExtGcd {
  Integer g;  // g = s*a + t*b, g >= 0
  Integer s;
  Integer t;
};

inline ExtGcd ext_gcd(const Integer& a, const Integer& b) {
  Integer old_r = a, r = b;
  Integer old_s = 1, s = 0;
  Integer old_t = 0, t = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = std::move(r);
    r = std::move(tmp);
    tmp = old_s - q * s;
    old_s = std::move(s);
    s = std::move(tmp);
    tmp = old_t - q * t;
    old_t = std::move(t);
    t = std::move(tmp);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_r, old_s, old_t};
}

inline std::string to_string(const Integer& a) { return a.str(); }

inline bool fits_int64(const Integer& a) {
  static const Integer lo = std::numeric_limits<std::int64_t>::min();
  static const Integer hi = std::numeric_limits<std::int64_t>::max();
  return a >= lo && a <= hi;
}

}  // namespace mackeyalg::zmod

#endif  // MACKEYALG_ZMOD_INTEGER_HPP
