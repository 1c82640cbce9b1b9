#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ciqc {

using Integer = mpz_class;
using Rational = mpq_class;

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

// Accepts "p", "-p", "p/q"; the result is canonicalized.
Rational parse_rational(std::string_view text);

Rational pow(const Rational& base, long exponent);
Integer factorial(long k);
Rational binomial(long top, long k); // 0 when k < 0 or top < k for top >= 0

inline Rational make_rational(long num, long den = 1)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

bool is_integer(const Rational& r);

} // namespace ciqc
