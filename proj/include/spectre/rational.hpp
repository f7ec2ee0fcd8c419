#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace spectre {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "n", "-n" or "p/q" (optional surrounding whitespace). Throws Error(Usage).
Rational parse_rational(std::string_view text);

/// Canonical text form: "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& q);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

Integer floor(const Rational& q);
Integer ceil(const Rational& q);

/// Fractional part in [0, 1).
Rational frac(const Rational& q);

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace spectre
