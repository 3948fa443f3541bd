#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace clusterdouble {

using Integer = mpz_class;
using Rational = mpq_class;

// "p/q" with q > 0 and gcd(p, q) = 1; integers are written "p/1".
std::string format_rational(const Rational& value);

// Accepts "p/q" or "p" with optional sign. Throws ParseError.
Rational parse_rational(std::string_view text);

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace clusterdouble
